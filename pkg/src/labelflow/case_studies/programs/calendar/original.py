"""Count the days on which both Alice and Bob are free (no labels).

Usage: python original.py inputs.json, where the file holds
{"alice": {day: bool}, "bob": {day: bool}}.
"""

from __future__ import annotations

import json
import sys

with open(sys.argv[1], encoding="utf-8") as fh:
    inputs = json.load(fh)

alice_cal = inputs["alice"]
bob_cal = inputs["bob"]

count = 0
for day, available in alice_cal.items():
    if day in bob_cal:
        bob_avail = bob_cal[day]
        if available and bob_avail:
            count = count + 1

print(count)
