"""Raising A data to AB is always allowed."""

from labelflow import *
from labelflow.diamond import A, B, AB

a = label_new(20, A)
both = relabel(a, AB)
both = both + relabel(label_new(1, B), AB)
print(declassify(both))
