"""Returning early under a secret branch reveals the branch to the caller."""

from labelflow import *
from labelflow.diamond import A, B, AB

def pick(a: Labeled[bool, A]) -> int:
    with pc_block(A):
        if a:
            return 1  # fix-delete
    return 0
