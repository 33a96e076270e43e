"""A name first bound inside a raised region does not survive it."""

from labelflow import *
from labelflow.diamond import A, B, AB

a = secret_input("a", Labeled[bool, A])
with pc_block(A):
    if a:
        t = label_new(1, A)
print(declassify(t))  # fix-delete
