"""A public counter bumped under an A-labeled branch."""

from labelflow import *
from labelflow.diamond import A, B, AB

flag = secret_input("flag", Labeled[bool, A])
hits = 0
with pc_block(A):
    if flag:
        hits = hits + 1  # fix-delete
print(hits)
