"""A function marked side-effect free may run under a raised pc."""

from labelflow import *
from labelflow.diamond import A, B, AB

@side_effect_free_attr
def square(v: int) -> int:
    return v * v


a = secret_input("a", Labeled[bool, A])
out = label_new(0, A)
with pc_block(A):
    if a:
        out = relabel(square(7), A)
print("ran")
