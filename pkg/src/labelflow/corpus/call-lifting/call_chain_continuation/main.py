"""chain hands the payload to a continuation that must return a labeled value."""

from labelflow import *
from labelflow.diamond import A, B, AB

x = label_new(4, A)
y: Labeled[int, A] = chain(x, lambda v: lift_public(v * v))
print(declassify(y))
