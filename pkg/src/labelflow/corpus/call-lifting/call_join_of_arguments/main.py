"""fcall gives the result the join of its argument labels."""

from labelflow import *
from labelflow.diamond import A, B, AB

def add(x, y):
    return x + y


a = label_new(2, A)
b = label_new(3, B)
c: Labeled[int, AB] = fcall(add(a, b))
d: Labeled[int, A] = fcall(add(a, 10))
print(declassify(c), declassify(d))
