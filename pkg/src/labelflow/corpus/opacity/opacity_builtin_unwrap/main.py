"""int() is not a way around the wrapper."""

from labelflow import *
from labelflow.diamond import A, B, AB

x = secret_input("x", Labeled[float, A])
n = int(x)  # fix: n = fcall(int(x))
