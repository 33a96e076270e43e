"""The case's lattice.lat orders Low < Mid < High; High cannot go down to Mid."""
from labelflow import label_new, relabel

x = label_new(3, High)
y = relabel(x, Mid)  # fix: y = relabel(x, High)
