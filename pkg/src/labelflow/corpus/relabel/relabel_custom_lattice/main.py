"""A three-level chain declared in the program itself."""
from labelflow import declassify, label_new, relabel, use_lattice

use_lattice(levels=["Low", "Mid", "High"], edges=[("Low", "Mid"), ("Mid", "High")], bottom="Low")

x = label_new(3, Mid)
y = relabel(x, High)
print(declassify(y))
