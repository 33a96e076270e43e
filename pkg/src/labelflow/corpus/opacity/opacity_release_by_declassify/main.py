"""The payload leaves the wrapper only through declassify."""

from labelflow import *
from labelflow.diamond import A, B, AB

x = label_new(5, A)
print(declassify(x) + 1)
