"""Compiles only because the leak hides behind unchecked_operation."""

from labelflow import *
from labelflow.diamond import A, B, AB

secret = secret_input("pin", Labeled[int, A])
print("pin check")
unchecked_operation(print(secret))
