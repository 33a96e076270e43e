"""An ordinary function receives a labeled argument directly."""

from labelflow import *
from labelflow.diamond import A, B, AB

def double(v):
    return v * 2


x = label_new(21, A)
y = double(x)  # fix: y = fcall(double(x))
