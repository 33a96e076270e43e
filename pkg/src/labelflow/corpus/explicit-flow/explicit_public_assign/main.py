"""A-labeled data assigned straight into a public variable."""

from labelflow import *
from labelflow.diamond import A, B, AB

data_a = label_new(42, A)
public: int = 0
public = data_a  # fix: public = 42
print(public)
