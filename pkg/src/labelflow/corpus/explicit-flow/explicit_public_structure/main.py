"""The length of a list of secrets is public; only the elements are labeled."""

from labelflow import *
from labelflow.diamond import A, B, AB

scores = secret_input("scores", list[Labeled[int, A]])
total = label_new(0, A)
for s in scores:
    total = total + s
print(len(scores))
