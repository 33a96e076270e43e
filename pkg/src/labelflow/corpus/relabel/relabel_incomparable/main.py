"""A and B are incomparable so no relabel connects them."""

from labelflow import *
from labelflow.diamond import A, B, AB

a = label_new(1, A)
b = relabel(a, B)  # fix: b = relabel(a, AB)
