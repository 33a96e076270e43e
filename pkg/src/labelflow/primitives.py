"""Surface names of the checked language.

Programs import these names, but they never execute: the compiler type-checks
every use and erases it before the program runs.  Calling one directly means
the program bypassed :func:`labelflow.compile_source`, which is refused.
"""

from __future__ import annotations

from typing import Any, Generic, TypeVar

T = TypeVar("T")
L = TypeVar("L")


class NotCompiledError(RuntimeError):
    """A checked-language primitive was called from unchecked code."""


def _refuse(name: str):
    raise NotCompiledError(
        f"{name}() only exists inside checked programs; load the module with labelflow.compile_source"
    )


class Labeled(Generic[T, L]):
    """``Labeled[T, L]``: a ``T`` payload classified at label ``L``.

    Only a type annotation.  At run time a labeled value is its payload.
    """

    __slots__ = ()

    def __new__(cls, *args, **kwargs):
        _refuse("Labeled")


PRIMITIVES = (
    "label_new",
    "relabel",
    "declassify",
    "lift_public",
    "fcall",
    "mcall",
    "chain",
    "pc_block",
    "side_effect_free_attr",
    "unchecked_operation",
    "secret_input",
    "public_input",
    "use_lattice",
)


def label_new(value: Any, label: Any) -> Any:
    _refuse("label_new")


def relabel(value: Any, label: Any) -> Any:
    _refuse("relabel")


def declassify(value: Any) -> Any:
    _refuse("declassify")


def lift_public(value: Any) -> Any:
    _refuse("lift_public")


def fcall(call: Any) -> Any:
    _refuse("fcall")


def mcall(chain: Any) -> Any:
    _refuse("mcall")


def chain(value: Any, continuation: Any) -> Any:
    _refuse("chain")


def pc_block(label: Any) -> Any:
    _refuse("pc_block")


def side_effect_free_attr(func: Any) -> Any:
    _refuse("side_effect_free_attr")


def unchecked_operation(expr: Any) -> Any:
    _refuse("unchecked_operation")


def secret_input(key: str, type_: Any, default: Any = None) -> Any:
    _refuse("secret_input")


def public_input(key: str, type_: Any = None, default: Any = None) -> Any:
    _refuse("public_input")


def use_lattice(*, levels: Any, edges: Any, bottom: str) -> Any:
    _refuse("use_lattice")
