"""A secret-driven loop inside a block, with every write at A."""

from labelflow import *
from labelflow.diamond import A, B, AB

n = secret_input("n", Labeled[int, A])
total = label_new(0, A)
with pc_block(A):
    while n > label_new(0, A):
        total = total + n
        n = n - label_new(1, A)
print(len("fixed"))
