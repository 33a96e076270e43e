"""Values at the same label combine and stay at that label."""

from labelflow import *
from labelflow.diamond import A, B, AB

a = label_new(1, A)
b = label_new(2, A)
b = a + b
print(declassify(b))
