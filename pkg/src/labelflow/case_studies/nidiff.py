"""Paired-run noninterference testing.

A program is run twice with the same public inputs and different secret
inputs.  If the public channel (stdout plus exit status) differs, some secret
reached it; the first divergent byte locates the leak.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import traceback
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterator

from ..compiler import CompiledProgram, load_program

INDISTINGUISHABLE = "indistinguishable"
LEAK = "leak"
INCONCLUSIVE = "inconclusive"


@dataclass
class NiVerdict:
    verdict: str
    first_divergence: int | None = None
    output_a: bytes = b""
    output_b: bytes = b""
    logs: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.verdict == INDISTINGUISHABLE

    def describe(self) -> str:
        if self.verdict == LEAK:
            pos = self.first_divergence
            a = self.output_a[pos:pos + 20]
            b = self.output_b[pos:pos + 20]
            return f"leak: public outputs first differ at byte {pos} ({a!r} vs {b!r})"
        if self.verdict == INCONCLUSIVE:
            return "inconclusive: " + "; ".join(line.splitlines()[-1] for line in self.logs if line)
        return INDISTINGUISHABLE


def first_divergence(a: bytes, b: bytes) -> int | None:
    """Index of the first differing byte, or ``None`` when equal."""
    for i, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return i
    return None if len(a) == len(b) else min(len(a), len(b))


def _public_channel(program: CompiledProgram, secret: dict, public: dict) -> bytes:
    result = program.run(secret=secret, public=public)
    status = b"" if result.exit_code in (None, 0) else f"\n[exit {result.exit_code}]".encode()
    return result.stdout.encode("utf-8") + status


def noninterference_diff(
    program: CompiledProgram | str | Path,
    secret_a: dict[str, Any],
    secret_b: dict[str, Any],
    public: dict[str, Any] | None = None,
) -> NiVerdict:
    if not isinstance(program, CompiledProgram):
        program = load_program(_resolve(program))
    public = dict(public or {})
    outputs: list[bytes] = []
    logs: list[str] = []
    for tag, secret in (("a", secret_a), ("b", secret_b)):
        try:
            outputs.append(_public_channel(program, secret, public))
        except Exception:
            logs.append(f"run {tag} failed:\n{traceback.format_exc()}")
            outputs.append(b"")
    if logs:
        return NiVerdict(INCONCLUSIVE, None, outputs[0], outputs[1], logs)
    pos = first_divergence(outputs[0], outputs[1])
    return NiVerdict(INDISTINGUISHABLE if pos is None else LEAK, pos, outputs[0], outputs[1])


def _resolve(program: str | Path) -> Path:
    path = Path(program)
    return path / "main.py" if path.is_dir() else path


# -- secret generation ------------------------------------------------------

def perturb(value: Any, rng: random.Random) -> Any:
    """A random value with the same shape as ``value`` (same keys and lengths)."""
    if isinstance(value, bool):
        return rng.random() < 0.5
    if isinstance(value, int):
        return rng.randint(-1000, 1000)
    if isinstance(value, float):
        return rng.uniform(-1000.0, 1000.0)
    if isinstance(value, str):
        return "".join(rng.choice("abcdefghijklmnopqrstuvwxyz") for _ in range(max(1, len(value))))
    if isinstance(value, list):
        return [perturb(v, rng) for v in value]
    if isinstance(value, tuple):
        return tuple(perturb(v, rng) for v in value)
    if isinstance(value, dict):
        return {k: perturb(v, rng) for k, v in value.items()}
    return value


def secret_pairs(example: dict[str, Any], count: int, seed: int = 0) -> Iterator[tuple[dict, dict]]:
    """``count`` pairs of distinct secret assignments shaped like ``example``.

    Shapes with a single inhabitant (empty containers, ``None``) cannot be
    varied, in which case the pair is equal.
    """
    rng = random.Random(seed)
    for _ in range(count):
        a = perturb(example, rng)
        b = perturb(example, rng)
        for _ in range(20):
            if a != b:
                break
            b = perturb(example, rng)
        yield a, b


def _read_json(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a JSON object of named inputs")
    return data


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="nidiff", description="Paired-run noninterference check.")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run a program under two secret assignments")
    run.add_argument("program", help="program file or corpus case directory")
    run.add_argument("--secret-a", required=True, help="JSON object of secret inputs for the first run")
    run.add_argument("--secret-b", required=True, help="JSON object of secret inputs for the second run")
    run.add_argument("--public", help="JSON object of public inputs shared by both runs")
    args = parser.parse_args(argv)
    from ..diagnostics import FlowError

    try:
        verdict = noninterference_diff(
            args.program, _read_json(args.secret_a), _read_json(args.secret_b),
            _read_json(args.public) if args.public else {},
        )
    except FlowError as exc:
        print(f"nidiff: program does not compile:\n{exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"nidiff: {exc}", file=sys.stderr)
        return 2
    print(verdict.describe())
    for log in verdict.logs:
        print(log, file=sys.stderr)
    return {INDISTINGUISHABLE: 0, LEAK: 1}.get(verdict.verdict, 3)


if __name__ == "__main__":
    sys.exit(main())
