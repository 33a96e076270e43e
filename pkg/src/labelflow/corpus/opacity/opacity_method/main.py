"""Calling a method on a labeled string without mcall."""

from labelflow import *
from labelflow.diamond import A, B, AB

name = secret_input("name", Labeled[str, A])
shout = name.upper()  # fix: shout = mcall(name.upper())
