"""Public constants enter a labeled computation through lift_public or relabel."""

from labelflow import *
from labelflow.diamond import A, B, AB

a = label_new(5, A)
b = a * lift_public(3) + relabel(1, A)
print(declassify(b))
