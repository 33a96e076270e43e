"""An inner block may not lower the pc from AB to A."""

from labelflow import *
from labelflow.diamond import A, B, AB

b = label_new(True, AB)
with pc_block(AB):
    if b:
        with pc_block(A):  # fix: with pc_block(AB):
            pass
