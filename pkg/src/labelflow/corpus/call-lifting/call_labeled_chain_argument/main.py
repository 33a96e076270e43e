"""mcall arguments must be plain; a B-labeled argument belongs in fcall."""

from labelflow import *
from labelflow.diamond import A, B, AB

text = label_new("hello", A)
n = mcall(text.count(label_new("l", B)))  # fix: n = mcall(text.count("l"))
