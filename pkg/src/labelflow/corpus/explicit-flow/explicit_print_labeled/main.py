"""Printing a labeled value without releasing it."""

from labelflow import *
from labelflow.diamond import A, B, AB

x = secret_input("x", Labeled[int, A])
print(x)  # fix: print(declassify(x))
