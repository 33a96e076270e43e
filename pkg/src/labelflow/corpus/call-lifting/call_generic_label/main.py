"""A function generic in its label works for every principal."""

from labelflow import *
from labelflow.diamond import A, B, AB

from typing import TypeVar

L = TypeVar("L")


def bump(v: Labeled[int, L]) -> Labeled[int, L]:
    return v + label_new(1, L)


a = bump(label_new(1, A))
b = bump(label_new(10, B))
print(declassify(a), declassify(b))
