"""A seeded game of battleship in which neither player can read the other's grid.

Run with ``python demos/walkthrough_battleship.py [SEED_A SEED_B]``.  Each grid
carries its owner's label; a shot is answered by a declassified hit or miss,
which is the only information that crosses between players.
"""

from __future__ import annotations

import sys

from labelflow import check_source
from labelflow.case_studies import PROGRAMS_DIR
from labelflow.case_studies.battleship import battleship_play, parse_transcript
from labelflow.harness.corpus import default_manifest


def main(argv: list[str]) -> None:
    seed_a, seed_b = (int(argv[0]), int(argv[1])) if len(argv) == 2 else (1, 2)
    transcript = battleship_play(seed_a, seed_b)
    turns, winner, count = parse_transcript(transcript)
    for n, shooter, row, col, hit in turns[:5]:
        print(f"turn {n}: {shooter} -> ({row}, {col}) {'hit' if hit else 'miss'}")
    print("...")
    print(f"winner {winner} after {count} turns; replay identical: {battleship_play(seed_a, seed_b) == transcript}")

    # A player who tries to look at the opponent's grid does not get past the checker.
    case = default_manifest().parent / "opacity" / "opacity_battleship_grid_tamper" / "main.py"
    print("\ncheating variant:")
    for diag in check_source(case.read_text(), str(case)):
        print("  ", diag)
    print("honest port:", "accepted" if not check_source((PROGRAMS_DIR / "battleship" / "port.py").read_text()) else "rejected")


if __name__ == "__main__":
    main(sys.argv[1:])
