"""Two people compare calendars without showing each other the details.

Run with ``python demos/walkthrough_calendar.py``.  Alice's days are labeled
A, Bob's are labeled B, and only the number of shared free days is ever
released.  The script also prints which labeling primitives the port uses.
"""

from __future__ import annotations

import random

from labelflow.case_studies import PROGRAMS_DIR, compiled_port
from labelflow.case_studies.calendar_study import WEEK, calendar_mutual_availability, intersection_oracle
from labelflow.case_studies.metrics import count_api_usage
from labelflow.case_studies.nidiff import noninterference_diff


def main() -> None:
    rng = random.Random(7)
    alice = {d: rng.random() < 0.5 for d in WEEK}
    bob = {d: rng.random() < 0.5 for d in WEEK}
    print("alice free:", [d for d, f in alice.items() if f])
    print("bob free:  ", [d for d, f in bob.items() if f])
    print("shared free days (labeled port):", calendar_mutual_availability(alice, bob))
    print("shared free days (plain oracle):", intersection_oracle(alice, bob))

    # Changing Alice's calendar while keeping the overlap count fixed is invisible.
    shifted = dict(alice)
    free_only_alice = [d for d in WEEK if alice[d] and not bob[d]]
    busy_both = [d for d in WEEK if not alice[d] and not bob[d]]
    if free_only_alice and busy_both:
        shifted[free_only_alice[0]], shifted[busy_both[0]] = False, True
    verdict = noninterference_diff(compiled_port("calendar"), {"alice": alice, "bob": bob}, {"alice": shifted, "bob": bob})
    print("two Alices with the same overlap:", verdict.describe())

    counts = count_api_usage(PROGRAMS_DIR / "calendar" / "port.py")
    print("API usage (declassify, fcall/mcall, pc_block, relabel):", counts.row())


if __name__ == "__main__":
    main()
