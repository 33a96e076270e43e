"""Under pc A, a B-labeled target cannot be written."""

from labelflow import *
from labelflow.diamond import A, B, AB

a = secret_input("a", Labeled[bool, A])
t = label_new(0, B)
with pc_block(A):
    if a:
        t = relabel(1, B)  # fix-delete
