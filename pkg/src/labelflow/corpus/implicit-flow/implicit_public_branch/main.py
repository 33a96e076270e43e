"""Public conditions need no pc_block even when the branches touch labeled data."""

from labelflow import *
from labelflow.diamond import A, B, AB

rounds = public_input("rounds", int)
acc = secret_input("seed", Labeled[int, A])
for i in range(rounds):
    if i % 2 == 0:
        acc = acc + label_new(i, A)
print(rounds)
