"""A binding declared at AB must be given an AB value."""

from labelflow import *
from labelflow.diamond import A, B, AB

a = label_new(1, A)
wide: Labeled[int, AB] = a  # fix: wide: Labeled[int, AB] = relabel(a, AB)
