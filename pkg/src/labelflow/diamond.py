"""The default four-element diamond lattice: Public below A and B, both below AB."""

from .lattice import LatticeSpec, define_lattice

DIAMOND_SPEC = LatticeSpec(
    levels=("Public", "A", "B", "AB"),
    edges=(("Public", "A"), ("Public", "B"), ("A", "AB"), ("B", "AB")),
    bottom="Public",
)

DIAMOND = define_lattice(DIAMOND_SPEC)

Public = DIAMOND.Public
A = DIAMOND.tags["A"]
B = DIAMOND.tags["B"]
AB = DIAMOND.tags["AB"]

__all__ = ["DIAMOND", "DIAMOND_SPEC", "Public", "A", "B", "AB"]
