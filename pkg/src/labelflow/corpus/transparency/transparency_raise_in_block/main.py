"""Raising under a secret branch makes termination depend on the secret."""

from labelflow import *
from labelflow.diamond import A, B, AB

a = secret_input("a", Labeled[bool, A])
with pc_block(A):
    if a:
        raise SystemExit(1)  # fix-delete
