"""A conditional expression turns a labeled test into a plain number."""

from labelflow import *
from labelflow.diamond import A, B, AB

flag = secret_input("flag", Labeled[bool, A])
bit = 1 if flag else 0  # fix: bit = 1
print(bit)
