"""Writing A data under an A pc."""

from labelflow import *
from labelflow.diamond import A, B, AB

a = secret_input("a", Labeled[bool, A])
t = label_new(0, A)
with pc_block(A):
    if a:
        t = relabel(1, A)
print("ok")
