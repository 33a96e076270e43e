"""A + B data lands in an AB slot; the public output never touches it."""

from labelflow import *
from labelflow.diamond import A, B, AB

alice = secret_input("alice", Labeled[int, A])
bob = secret_input("bob", Labeled[int, B])
both: Labeled[int, AB] = alice + bob
both = both * label_new(2, AB)
print("combined")
