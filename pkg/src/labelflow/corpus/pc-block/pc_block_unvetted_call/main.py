"""A helper with unknown effects called under a raised pc."""

from labelflow import *
from labelflow.diamond import A, B, AB

def log(msg):
    print(msg)
    return 0


a = secret_input("a", Labeled[bool, A])
with pc_block(A):
    if a:
        log("taken")  # fix-delete
