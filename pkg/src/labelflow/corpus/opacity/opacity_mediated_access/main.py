"""Label-preserving access to a method and a field of the payload."""

from labelflow import *
from labelflow.diamond import A, B, AB

word = label_new("  secret  ", A)
size = mcall(word.strip().upper().count("S"))
re = mcall(label_new(7, A).real)
print(declassify(size), declassify(re))
