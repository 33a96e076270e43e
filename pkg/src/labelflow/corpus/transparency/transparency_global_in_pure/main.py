"""A function claimed side-effect free must not touch module state."""

from labelflow import *
from labelflow.diamond import A, B, AB

calls = 0


@side_effect_free_attr
def bump(v: int) -> int:
    global calls  # fix-delete
    return v + 1
