"""End-to-end labeled programs and the tools that measure them."""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path

PROGRAMS_DIR = Path(__file__).resolve().parent / "programs"


def program_path(study: str, variant: str = "port") -> Path:
    """Path of a shipped source file, e.g. ``program_path("calendar")``."""
    path = PROGRAMS_DIR / study / f"{variant}.py"
    if not path.is_file():
        raise FileNotFoundError(f"no {variant} program for case study {study!r}")
    return path


@lru_cache(maxsize=None)
def compiled_port(study: str):
    from ..compiler import load_program

    return load_program(program_path(study))
