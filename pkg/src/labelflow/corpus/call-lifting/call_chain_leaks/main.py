"""A continuation that prints the payload is an unvetted side effect."""

from labelflow import *
from labelflow.diamond import A, B, AB

x = label_new(4, A)
y = chain(x, lambda v: lift_public(print(v)))  # fix: y = chain(x, lambda v: lift_public(v))
