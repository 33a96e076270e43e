"""Minimal slotted record base.

The build driver imports the checker on every clean build, so its modules
avoid ``dataclasses`` (whose import and per-class code generation dominate
start-up time).  Subclasses list their fields in ``__slots__``.
"""

from __future__ import annotations


class Record:
    __slots__ = ()
    _defaults: dict = {}
    _factories: dict = {}

    def __init__(self, *args, **kwargs):
        slots = type(self).__slots__
        if len(args) > len(slots):
            raise TypeError(f"{type(self).__name__} takes at most {len(slots)} arguments")
        set_ = object.__setattr__
        for name, value in zip(slots, args):
            set_(self, name, value)
        for name in slots[len(args):]:
            if name in kwargs:
                value = kwargs.pop(name)
            elif name in self._defaults:
                value = self._defaults[name]
            elif name in self._factories:
                value = self._factories[name]()
            else:
                raise TypeError(f"{type(self).__name__} missing argument {name!r}")
            set_(self, name, value)
        if kwargs:
            raise TypeError(f"{type(self).__name__} got unexpected arguments {sorted(kwargs)}")

    def _values(self) -> tuple:
        return tuple(getattr(self, n) for n in type(self).__slots__)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self._values() == other._values()

    def __hash__(self):
        return hash((type(self).__name__,) + self._values())

    def __repr__(self) -> str:
        inner = ", ".join(f"{n}={getattr(self, n)!r}" for n in type(self).__slots__)
        return f"{type(self).__name__}({inner})"


class Frozen(Record):
    """Record whose fields cannot be reassigned after construction."""

    __slots__ = ()

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __delattr__(self, name):
        raise AttributeError(f"{type(self).__name__} is immutable")


class Mutable(Record):
    """Record compared by identity."""

    __slots__ = ()
    __eq__ = object.__eq__
    __hash__ = object.__hash__
