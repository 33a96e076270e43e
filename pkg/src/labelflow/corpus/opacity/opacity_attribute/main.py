"""Reading an attribute of the payload directly."""

from labelflow import *
from labelflow.diamond import A, B, AB

x = label_new(5, A)
print(x.real)  # fix: print(declassify(mcall(x.real)))
