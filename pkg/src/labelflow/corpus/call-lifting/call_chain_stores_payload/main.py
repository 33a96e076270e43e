"""The raw payload inside a continuation may not be saved to an outer list."""

from labelflow import *
from labelflow.diamond import A, B, AB

stash = []
x = label_new(4, A)
y = chain(x, lambda v: lift_public(stash.append(v)))  # fix: y = chain(x, lambda v: lift_public(v))
