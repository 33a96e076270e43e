"""After the pc_block ends, the pc is public again and public writes are fine."""

from labelflow import *
from labelflow.diamond import A, B, AB

flag = secret_input("flag", Labeled[bool, A])
seen = label_new(0, A)
with pc_block(A):
    if flag:
        seen = seen + label_new(1, A)
status = "done"
print(status)
