"""Adding a plain int to a labeled one needs an explicit lift."""

from labelflow import *
from labelflow.diamond import A, B, AB

a = label_new(1, A)
b = a + 1  # fix: b = a + lift_public(1)
