"""Ordinary control flow and formatting are untouched by erasure."""

from labelflow import *
from labelflow.diamond import A, B, AB

rows = []
for i in range(3):
    rows.append(f"{i}:{i * i}")
total = label_new(sum(range(5)), A)
print(", ".join(rows), declassify(total))
