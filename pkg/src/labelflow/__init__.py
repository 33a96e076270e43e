"""labelflow: static information-flow control for Python programs.

Programs are written against the primitives in :mod:`labelflow.primitives`
(``label_new``, ``relabel``, ``pc_block`` and friends), checked by
:func:`compile_source`, and run as ordinary Python once their labels have
been erased.

Submodules load on first attribute access so that importing the package
(for example from the build driver) stays cheap.
"""

from __future__ import annotations

import importlib
from typing import TYPE_CHECKING, Any

_EXPORTS = {
    "compiler": ("CompiledProgram", "InputRuntime", "RunResult", "check_source", "compile_source", "load_program"),
    "diagnostics": ("Diagnostic", "FlowError"),
    "diamond": ("AB", "DIAMOND", "DIAMOND_SPEC", "A", "B", "Public"),
    "lattice": (
        "FlowsToUnsatisfied", "LabelTag", "Lattice", "LatticeError", "LatticeSpec", "define_lattice",
        "load_lattice_file",
    ),
    "oracle": ("OracleTables", "lattice_oracle"),
    "plan": ("BlockRewritePlan", "CallRewriteRecord"),
    "primitives": (
        "Labeled", "NotCompiledError", "chain", "declassify", "fcall", "label_new", "lift_public", "mcall",
        "pc_block", "public_input", "relabel", "secret_input", "side_effect_free_attr", "unchecked_operation",
        "use_lattice",
    ),
}
_WHERE = {name: module for module, names in _EXPORTS.items() for name in names}

__all__ = sorted(_WHERE)


def __getattr__(name: str) -> Any:
    module = _WHERE.get(name)
    if module is None:
        raise AttributeError(f"module 'labelflow' has no attribute {name!r}")
    value = getattr(importlib.import_module(f".{module}", __name__), name)
    globals()[name] = value
    return value


def __dir__() -> list[str]:
    return sorted(set(globals()) | set(__all__))


if TYPE_CHECKING:  # pragma: no cover
    from .compiler import CompiledProgram, InputRuntime, RunResult, check_source, compile_source, load_program
    from .diagnostics import Diagnostic, FlowError
    from .diamond import AB, DIAMOND, DIAMOND_SPEC, A, B, Public
    from .lattice import (
        FlowsToUnsatisfied, LabelTag, Lattice, LatticeError, LatticeSpec, define_lattice, load_lattice_file,
    )
    from .oracle import OracleTables, lattice_oracle
    from .plan import BlockRewritePlan, CallRewriteRecord
    from .primitives import (
        Labeled, NotCompiledError, chain, declassify, fcall, label_new, lift_public, mcall, pc_block,
        public_input, relabel, secret_input, side_effect_free_attr, unchecked_operation, use_lattice,
    )
