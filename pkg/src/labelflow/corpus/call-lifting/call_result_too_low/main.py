"""The fcall result is AB and cannot be stored at A."""

from labelflow import *
from labelflow.diamond import A, B, AB

def add(x, y):
    return x + y


a = label_new(2, A)
b = label_new(3, B)
c: Labeled[int, A] = fcall(add(a, b))  # fix: c: Labeled[int, AB] = fcall(add(a, b))
