"""A labeled boolean used as a plain branch condition."""

from labelflow import *
from labelflow.diamond import A, B, AB

secret = secret_input("flag", Labeled[bool, A])
y = label_new(0, A)
if secret:  # fix: if True:
    y = label_new(1, A)
