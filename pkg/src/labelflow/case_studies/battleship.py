"""Scripted two-player Battleship run through the labeled port."""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from . import compiled_port

MAX_TURNS = 200
_TURN = re.compile(r"^turn (\d+): ([AB]) fires at \((\d+), (\d+)\): (hit|miss)$")
_WINNER = re.compile(r"^winner: ([AB]) after (\d+) turns$")


class TranscriptError(ValueError):
    pass


def battleship_play(seed_a: int, seed_b: int) -> str:
    """Public transcript of the game for the given seed pair."""
    result = compiled_port("battleship").run(public={"seed_a": int(seed_a), "seed_b": int(seed_b)})
    return result.stdout


def parse_transcript(text: str) -> tuple[list[tuple[int, str, int, int, bool]], str, int]:
    """``(turns, winner, turn_count)`` where each turn is ``(n, shooter, row, col, hit)``."""
    turns: list[tuple[int, str, int, int, bool]] = []
    winner: tuple[str, int] | None = None
    for line in text.splitlines():
        if winner is not None:
            raise TranscriptError(f"output after the winner line: {line!r}")
        if m := _TURN.match(line):
            turns.append((int(m[1]), m[2], int(m[3]), int(m[4]), m[5] == "hit"))
        elif m := _WINNER.match(line):
            winner = (m[1], int(m[2]))
        else:
            raise TranscriptError(f"unrecognised transcript line: {line!r}")
    if winner is None:
        raise TranscriptError("transcript has no winner")
    return turns, winner[0], winner[1]


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="battleship", description="Play a seeded Battleship game.")
    parser.add_argument("--seed-a", type=int, required=True)
    parser.add_argument("--seed-b", type=int, required=True)
    parser.add_argument("--transcript", help="also write the transcript to this file")
    args = parser.parse_args(argv)
    transcript = battleship_play(args.seed_a, args.seed_b)
    if args.transcript:
        Path(args.transcript).write_text(transcript, encoding="utf-8")
    sys.stdout.write(transcript)
    return 0


if __name__ == "__main__":
    sys.exit(main())
