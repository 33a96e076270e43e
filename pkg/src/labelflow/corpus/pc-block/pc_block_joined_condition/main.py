"""Both principals' bits decide the branch, so the block runs at AB."""

from labelflow import *
from labelflow.diamond import A, B, AB

alice = secret_input("alice", Labeled[bool, A])
bob = secret_input("bob", Labeled[bool, B])
meet = label_new(False, AB)
with pc_block(AB):
    if alice and bob:
        meet = label_new(True, AB)
print(declassify(meet))
