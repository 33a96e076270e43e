"""Security lattices encoded as label types.

Every level of a lattice becomes a distinct class deriving from
:class:`LabelTag`.  Tags are never instantiated: the class itself *is* the
label.  The flows-to order and the join are materialised eagerly as evidence
classes, one per closure pair and one per ordered pair of levels, so that a
lookup either finds evidence or fails, the same way a missing trait impl
fails to type-check.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Union

from ._record import Frozen


class LatticeError(ValueError):
    """Raised for lattice descriptions that are not join-semilattices."""


class FlowsToUnsatisfied(TypeError):
    """No ``FlowsTo`` evidence exists for the requested pair."""


class _TagMeta(type):
    def __repr__(cls) -> str:
        return cls.__name__


class LabelTag(metaclass=_TagMeta):
    """Base of every generated label tag."""

    __slots__ = ()
    level: str = ""
    lattice: "Lattice | None" = None

    def __new__(cls, *args, **kwargs):
        raise TypeError(f"label tag {cls.__name__} is a type-level marker and has no instances")


class FlowsToEvidence(metaclass=_TagMeta):
    """Witness that ``source`` may flow to ``target``."""

    __slots__ = ()
    source: type[LabelTag]
    target: type[LabelTag]

    def __new__(cls, *args, **kwargs):
        raise TypeError("evidence classes have no instances")


class JoinEvidence(metaclass=_TagMeta):
    """Join of ``left`` and ``right``; the result tag is ``Out``."""

    __slots__ = ()
    left: type[LabelTag]
    right: type[LabelTag]
    Out: type[LabelTag]

    def __new__(cls, *args, **kwargs):
        raise TypeError("evidence classes have no instances")


TagLike = Union[str, "type[LabelTag]"]


class LatticeSpec(Frozen):
    """Levels plus covering edges ``(lower, upper)``.

    ``bottom`` is optional here; when given, it must be the unique least
    level.  The text format always requires it.
    """

    __slots__ = ("levels", "edges", "bottom")

    def __init__(self, levels: Iterable[str], edges: Iterable[tuple[str, str]] = (), bottom: str | None = None):
        super().__init__(tuple(levels), tuple((lo, hi) for lo, hi in edges), bottom)

    @classmethod
    def from_text(cls, text: str, source: str = "<lattice>") -> "LatticeSpec":
        levels: list[str] = []
        edges: list[tuple[str, str]] = []
        bottom: str | None = None
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            keyword, args = parts[0], parts[1:]
            if keyword == "level" and len(args) == 1:
                levels.append(args[0])
            elif keyword == "edge" and len(args) == 2:
                edges.append((args[0], args[1]))
            elif keyword == "bottom" and len(args) == 1:
                if bottom is not None:
                    raise LatticeError(f"{source}:{lineno}: bottom declared twice")
                bottom = args[0]
            else:
                raise LatticeError(f"{source}:{lineno}: cannot parse line {raw.strip()!r}")
        if bottom is None:
            raise LatticeError(f"{source}: missing mandatory 'bottom <name>' line")
        return cls(levels, edges, bottom)

    def to_text(self) -> str:
        lines = [f"level {name}" for name in self.levels]
        lines += [f"edge {lo} {hi}" for lo, hi in self.edges]
        if self.bottom is not None:
            lines.append(f"bottom {self.bottom}")
        return "\n".join(lines) + "\n"


def load_lattice_file(path: str | Path) -> "Lattice":
    path = Path(path)
    return define_lattice(LatticeSpec.from_text(path.read_text(encoding="utf-8"), str(path)))


def _closure(spec: LatticeSpec) -> tuple[list[str], list[int]]:
    """Validate names and return (levels, up-set bitmask per level)."""
    names = list(spec.levels)
    if not names:
        raise LatticeError("a lattice needs at least one level")
    index: dict[str, int] = {}
    for name in names:
        if not name.isidentifier():
            raise LatticeError(f"level name {name!r} is not an identifier")
        if name in index:
            raise LatticeError(f"level {name} declared twice")
        index[name] = len(index)
    up = [1 << i for i in range(len(names))]
    for lo, hi in spec.edges:
        for end in (lo, hi):
            if end not in index:
                raise LatticeError(f"edge ({lo}, {hi}) names undeclared level {end}")
        if lo == hi:
            raise LatticeError(f"edge ({lo}, {hi}) is a self-loop")
        up[index[lo]] |= 1 << index[hi]
    # Warshall over bitmasks
    for k in range(len(names)):
        bit = 1 << k
        for i in range(len(names)):
            if up[i] & bit:
                up[i] |= up[k]
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            if up[i] >> j & 1 and up[j] >> i & 1:
                raise LatticeError(f"cycle between {names[i]} and {names[j]}")
    return names, up


class _EvidenceTable:
    def __init__(self, kind: str, table: dict, lattice: "Lattice"):
        self._kind = kind
        self._table = table
        self._lattice = lattice

    def __getitem__(self, key):
        left, right = key
        names = (self._lattice.name_of(left), self._lattice.name_of(right))
        try:
            return self._table[names]
        except KeyError:
            if self._kind == "FlowsTo":
                raise FlowsToUnsatisfied(
                    f"the trait bound `{names[0]}: FlowsTo<{names[1]}>` is not satisfied"
                ) from None
            raise

    def __contains__(self, key) -> bool:
        left, right = key
        return (self._lattice.name_of(left), self._lattice.name_of(right)) in self._table

    def __len__(self) -> int:
        return len(self._table)

    def __iter__(self):
        return iter(self._table.values())


class Lattice:
    """A validated, closed-world lattice with generated tag and evidence types."""

    levels: tuple[str, ...]
    bottom: str
    tags: dict[str, type[LabelTag]]

    def __init__(self, spec: LatticeSpec) -> None:
        self.spec = spec
        names, up = _closure(self.spec)
        n = len(names)
        everything = (1 << n) - 1
        minima = [names[i] for i in range(n) if up[i] == everything]
        if len(minima) != 1:
            lows = [names[i] for i in range(n) if not any(up[j] >> i & 1 for j in range(n) if j != i)]
            raise LatticeError(f"no unique bottom: minimal levels are {', '.join(lows)}")
        bottom = minima[0]
        if self.spec.bottom is not None and self.spec.bottom != bottom:
            raise LatticeError(f"declared bottom {self.spec.bottom} is not the least level (that is {bottom})")

        joins: dict[tuple[str, str], str] = {}
        for i in range(n):
            for j in range(n):
                common = up[i] & up[j]
                least = [k for k in range(n) if common >> k & 1 and up[k] & common == common]
                if not least:
                    raise LatticeError(f"pair ({names[i]}, {names[j]}) has no least upper bound")
                joins[names[i], names[j]] = names[least[0]]

        self.levels = tuple(names)
        self.bottom = bottom
        self._up = {names[i]: up[i] for i in range(n)}
        self._index = {name: i for i, name in enumerate(names)}
        self.tags = {}
        for name in names:
            self.tags[name] = _TagMeta(name, (LabelTag,), {"__slots__": (), "level": name, "lattice": self})

        flows = {}
        for a in names:
            for b in names:
                if self._up[a] >> self._index[b] & 1:
                    flows[a, b] = _TagMeta(
                        f"FlowsTo[{a}, {b}]",
                        (FlowsToEvidence,),
                        {"__slots__": (), "source": self.tags[a], "target": self.tags[b]},
                    )
        join_ev = {}
        for (a, b), out in joins.items():
            join_ev[a, b] = _TagMeta(
                f"Join[{a}, {b}]",
                (JoinEvidence,),
                {"__slots__": (), "left": self.tags[a], "right": self.tags[b], "Out": self.tags[out]},
            )
        self.FlowsTo = _EvidenceTable("FlowsTo", flows, self)
        self.Join = _EvidenceTable("Join", join_ev, self)

    # -- naming ---------------------------------------------------------
    @property
    def Public(self) -> type[LabelTag]:
        return self.tags[self.bottom]

    def __getattr__(self, name: str):
        tags = self.__dict__.get("tags")
        if tags is not None:
            if name in tags:
                return tags[name]
            if name == "Public":
                return tags[self.__dict__["bottom"]]
        raise AttributeError(name)

    def name_of(self, label: TagLike) -> str:
        if isinstance(label, str):
            if label in self._index:
                return label
            if label == "Public":
                return self.bottom
            raise KeyError(f"unknown label {label!r}")
        if isinstance(label, type) and issubclass(label, LabelTag) and label.lattice is self:
            return label.level
        raise KeyError(f"{label!r} is not a label of this lattice")

    def __contains__(self, label: object) -> bool:
        try:
            self.name_of(label)  # type: ignore[arg-type]
        except KeyError:
            return False
        return True

    # -- runtime mirror of the evidence tables --------------------------
    def flows_to(self, source: TagLike, target: TagLike) -> bool:
        return (source, target) in self.FlowsTo

    def join(self, left: TagLike, right: TagLike) -> type[LabelTag]:
        return self.Join[left, right].Out

    def leq(self, a: str, b: str) -> bool:
        return bool(self._up[a] >> self._index[b] & 1)

    def join_name(self, a: str, b: str) -> str:
        return self.Join[a, b].Out.level

    def join_all(self, labels: Iterable[TagLike]) -> type[LabelTag]:
        out = self.Public
        for label in labels:
            out = self.join(out, label)
        return out

    def __repr__(self) -> str:
        return f"Lattice(levels={list(self.levels)}, bottom={self.bottom})"


def define_lattice(spec: LatticeSpec | str) -> Lattice:
    """Validate ``spec`` and generate its tags and evidence tables."""
    if isinstance(spec, str):
        spec = LatticeSpec.from_text(spec)
    return Lattice(spec)
