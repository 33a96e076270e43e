"""A while loop whose condition is labeled, with no pc_block."""

from labelflow import *
from labelflow.diamond import A, B, AB

n = secret_input("n", Labeled[int, A])
steps = label_new(0, A)
while n > label_new(0, A):  # fix: while False:
    n = n - label_new(1, A)
    steps = steps + label_new(1, A)
