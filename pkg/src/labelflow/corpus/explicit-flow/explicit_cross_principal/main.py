"""Alice's value stored into Bob's slot: A and B are incomparable."""

from labelflow import *
from labelflow.diamond import A, B, AB

alice = secret_input("alice", Labeled[int, A])
bob: Labeled[int, B] = label_new(0, B)
bob = alice  # fix: bob = label_new(7, B)
