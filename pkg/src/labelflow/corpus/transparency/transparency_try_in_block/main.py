"""Exception handling inside a pc_block is refused."""

from labelflow import *
from labelflow.diamond import A, B, AB

a = secret_input("a", Labeled[int, A])
with pc_block(A):  # fix: if True:
    try:
        ratio = label_new(10, A) // a
    except ZeroDivisionError:
        ratio = label_new(0, A)
