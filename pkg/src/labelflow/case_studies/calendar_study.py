"""Mutual availability of two principals' calendars, computed by the labeled port."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import compiled_port

WEEK = ("Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun")


class CalendarMismatch(ValueError):
    """The two calendars do not cover the same days."""

    def __init__(self, day: str, owner: str):
        self.day = day
        self.owner = owner
        super().__init__(f"day {day!r} is missing from {owner}'s calendar")


class CalendarFormatError(ValueError):
    pass


def parse_calendar(text: str, source: str = "<calendar>") -> dict[str, bool]:
    """Parse ``day:true|false`` lines; blank lines and ``#`` comments are ignored."""
    days: dict[str, bool] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        day, sep, value = (part.strip() for part in line.partition(":"))
        if not sep or not day or value.lower() not in ("true", "false"):
            raise CalendarFormatError(f"{source}:{lineno}: expected 'day:true|false', got {raw.strip()!r}")
        if day in days:
            raise CalendarFormatError(f"{source}:{lineno}: day {day!r} listed twice")
        days[day] = value.lower() == "true"
    return days


def load_calendar(path: str | Path) -> dict[str, bool]:
    path = Path(path)
    return parse_calendar(path.read_text(encoding="utf-8"), str(path))


def check_same_days(alice: dict[str, bool], bob: dict[str, bool]) -> None:
    for day in alice:
        if day not in bob:
            raise CalendarMismatch(day, "bob")
    for day in bob:
        if day not in alice:
            raise CalendarMismatch(day, "alice")


def calendar_mutual_availability(alice: dict[str, bool], bob: dict[str, bool]) -> int:
    """Number of days both are free, as released by the port's single declassify."""
    check_same_days(alice, bob)
    result = compiled_port("calendar").run(secret={"alice": dict(alice), "bob": dict(bob)})
    return int(result.stdout.strip())


def intersection_oracle(alice: dict[str, bool], bob: dict[str, bool]) -> int:
    return sum(1 for day, free in alice.items() if free and bob.get(day, False))


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="calendar", description="Count mutually free days of two calendars.")
    parser.add_argument("--alice", required=True, help="Alice's calendar, one day:true|false per line")
    parser.add_argument("--bob", required=True, help="Bob's calendar, same format")
    args = parser.parse_args(argv)
    try:
        count = calendar_mutual_availability(load_calendar(args.alice), load_calendar(args.bob))
    except (OSError, CalendarFormatError, CalendarMismatch) as exc:
        print(f"calendar: {exc}", file=sys.stderr)
        return 1
    print(count)
    return 0


if __name__ == "__main__":
    sys.exit(main())
