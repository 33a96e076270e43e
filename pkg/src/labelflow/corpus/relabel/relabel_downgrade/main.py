"""Relabeling AB data down to A would drop Bob's interest."""

from labelflow import *
from labelflow.diamond import A, B, AB

shared = label_new(10, AB)
mine = relabel(shared, A)  # fix: mine = relabel(shared, AB)
