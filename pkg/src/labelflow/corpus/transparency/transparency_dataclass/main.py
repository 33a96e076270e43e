"""A dataclass with a labeled field behaves exactly like the plain class."""

from labelflow import *
from labelflow.diamond import A, B, AB

from dataclasses import dataclass


@dataclass
class Patient:
    name: str
    age: Labeled[int, A]


p = Patient("kim", label_new(41, A))
older = p.age + label_new(1, A)
print(p.name, declassify(older))
