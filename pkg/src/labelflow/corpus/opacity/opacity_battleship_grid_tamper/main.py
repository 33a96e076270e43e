"""Peeking at the opponent's labeled fleet grid without a declassify."""

from labelflow import *
from labelflow.diamond import A, B, AB

GRID_SIZE = 4
grid_b = label_new([[False] * GRID_SIZE for _ in range(GRID_SIZE)], B)
grid_b[1][2] = label_new(True, B)
peek: bool = grid_b[1][2]  # fix: peek: bool = declassify(grid_b[1][2])
print(peek)
