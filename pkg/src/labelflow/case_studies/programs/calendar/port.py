"""Count the days on which both Alice and Bob are free.

Each calendar is readable only at its owner's label; the count of shared
free days mixes both and lives at AB until it is released.
"""

from __future__ import annotations

from labelflow import Labeled, declassify, label_new, pc_block, secret_input
from labelflow.diamond import AB, A, B

alice_cal = secret_input("alice", dict[str, Labeled[bool, A]])
bob_cal = secret_input("bob", dict[str, Labeled[bool, B]])

count = label_new(0, AB)
for day, available in alice_cal.items():
    if day in bob_cal:
        bob_avail = bob_cal[day]
        with pc_block(AB):
            if available and bob_avail:
                count = count + label_new(1, AB)

print(declassify(count))
