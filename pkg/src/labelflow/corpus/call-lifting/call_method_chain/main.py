"""mcall keeps the receiver's label through a chain of methods."""

from labelflow import *
from labelflow.diamond import A, B, AB

text = secret_input("text", Labeled[str, B])
words: Labeled[int, B] = mcall(text.strip().lower().count("a"))
print("counted")
