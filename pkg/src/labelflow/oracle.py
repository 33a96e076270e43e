"""Brute-force reference tables for a lattice spec.

Deliberately shares no code with :mod:`labelflow.lattice`: reachability is a
plain depth-first search over the covering edges and joins are found by
enumerating every common upper bound.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import LatticeError, LatticeSpec


@dataclass(frozen=True)
class OracleTables:
    levels: tuple[str, ...]
    bottom: str
    flows: dict[tuple[str, str], bool]
    join: dict[tuple[str, str], str]

    @property
    def flow_count(self) -> int:
        return sum(self.flows.values())


def _reachable(start: str, succ: dict[str, list[str]]) -> set[str]:
    seen = {start}
    stack = [start]
    while stack:
        node = stack.pop()
        for nxt in succ[node]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


def lattice_oracle(spec: LatticeSpec) -> OracleTables:
    levels = list(spec.levels)
    if len(set(levels)) != len(levels):
        raise LatticeError("duplicate level")
    succ: dict[str, list[str]] = {name: [] for name in levels}
    for lo, hi in spec.edges:
        if lo not in succ or hi not in succ:
            raise LatticeError(f"edge ({lo}, {hi}) names an undeclared level")
        if lo == hi:
            raise LatticeError(f"edge ({lo}, {hi}) is a self-loop")
        succ[lo].append(hi)

    above = {name: _reachable(name, succ) for name in levels}
    flows = {(a, b): b in above[a] for a in levels for b in levels}

    for a in levels:
        for b in levels:
            if a != b and flows[a, b] and flows[b, a]:
                raise LatticeError(f"cycle between {a} and {b}")

    bottoms = [x for x in levels if all(flows[x, y] for y in levels)]
    if len(bottoms) != 1:
        raise LatticeError("no unique bottom")
    if spec.bottom is not None and spec.bottom != bottoms[0]:
        raise LatticeError(f"declared bottom {spec.bottom} is not the least level")

    join: dict[tuple[str, str], str] = {}
    for a in levels:
        for b in levels:
            uppers = [c for c in levels if flows[a, c] and flows[b, c]]
            least = [c for c in uppers if all(flows[c, d] for d in uppers)]
            if len(least) != 1:
                raise LatticeError(f"pair ({a}, {b}) has no least upper bound")
            join[a, b] = least[0]
    return OracleTables(tuple(levels), bottoms[0], flows, join)
