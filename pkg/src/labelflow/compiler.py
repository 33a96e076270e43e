"""Front end: check a program, erase its labels and compile it to bytecode."""

from __future__ import annotations

from . import _syntax as ast
import builtins
import contextlib
import io
from pathlib import Path
from types import CodeType
from typing import Any

from ._record import Mutable
from .checker import CheckResult, check_module
from .diagnostics import Diagnostic, FlowError
from .diamond import DIAMOND
from .lattice import Lattice, LatticeSpec, define_lattice, load_lattice_file
from .ltypes import TLabeled, Ty
from .plan import BlockRewritePlan, CallRewriteRecord
from .rewrite import RUNTIME_NAME, erase

_MISSING = object()


def resolve_lattice(lattice: Lattice | LatticeSpec | str | Path | None) -> Lattice:
    if lattice is None:
        return DIAMOND
    if isinstance(lattice, Lattice):
        return lattice
    if isinstance(lattice, LatticeSpec):
        return define_lattice(lattice)
    return load_lattice_file(lattice)


class InputRuntime:
    """Supplies ``secret_input``/``public_input`` values to a running program."""

    def __init__(self, secret: dict[str, Any] | None = None, public: dict[str, Any] | None = None):
        self.secret = dict(secret or {})
        self.public = dict(public or {})

    def _get(self, table: dict, kind: str, key: str, default: Any) -> Any:
        if key in table:
            return table[key]
        if default is not _MISSING:
            return default
        raise KeyError(f"no {kind} input named {key!r}")

    def secret_input(self, key: str, default: Any = _MISSING) -> Any:
        return self._get(self.secret, "secret", key, default)

    def public_input(self, key: str, default: Any = _MISSING) -> Any:
        return self._get(self.public, "public", key, default)


class RunResult(Mutable):
    """Captured stdout, the final module namespace and the ``sys.exit`` code if any."""

    __slots__ = ("stdout", "namespace", "exit_code")
    _defaults = {"exit_code": None}


class CompiledProgram(Mutable):
    """A checked program: erased bytecode plus the checker's plans and records."""

    __slots__ = ("filename", "source", "lattice", "code", "python", "plans", "calls", "inputs", "types")
    _factories = {"plans": list, "calls": list, "inputs": dict, "types": dict}

    filename: str
    source: str
    lattice: Lattice
    code: CodeType
    python: ast.Module
    plans: list[BlockRewritePlan]
    calls: list[CallRewriteRecord]
    inputs: dict[str, tuple[str, Ty]]
    types: dict[str, Ty]

    def type_of(self, name: str) -> Ty:
        return self.types[name]

    def label_of(self, name: str) -> str | None:
        """Static label of a module-level binding, ``None`` when unlabeled."""
        ty = self.types[name]
        return str(ty.label) if isinstance(ty, TLabeled) else None

    def python_source(self) -> str:
        return ast.unparse(self.python)

    def run(self, secret: dict | None = None, public: dict | None = None, *, capture: bool = True) -> RunResult:
        namespace: dict[str, Any] = {
            "__name__": "__main__",
            "__file__": self.filename,
            "__builtins__": builtins,
            RUNTIME_NAME: InputRuntime(secret, public),
        }
        buf = io.StringIO()
        code = None
        redirect = contextlib.redirect_stdout(buf) if capture else contextlib.nullcontext()
        with redirect:
            try:
                exec(self.code, namespace)
            except SystemExit as exc:
                code = exc.code if isinstance(exc.code, int) else (0 if exc.code is None else 1)
        return RunResult(buf.getvalue(), namespace, code)


def _check(source: str, filename: str, lattice) -> tuple[ast.Module, CheckResult]:
    try:
        tree = ast.parse(source, filename=filename)
    except SyntaxError as exc:
        diag = Diagnostic("unsupported", f"syntax error: {exc.msg}", filename, exc.lineno or 0, (exc.offset or 1) - 1)
        raise FlowError([diag]) from None
    return tree, check_module(tree, filename, resolve_lattice(lattice))


def check_source(source: str, filename: str = "<program>", lattice=None) -> list[Diagnostic]:
    """All diagnostics for ``source``; an empty list means it compiles."""
    try:
        _, result = _check(source, filename, lattice)
    except FlowError as exc:
        return exc.diagnostics
    return result.diagnostics


def compile_source(source: str, filename: str = "<program>", lattice=None) -> CompiledProgram:
    """Check ``source`` and return the erased, compiled program.

    Raises :class:`FlowError` carrying every diagnostic when the program is
    rejected.
    """
    tree, result = _check(source, filename, lattice)
    if result.diagnostics:
        raise FlowError(result.diagnostics)
    module = erase(tree, result)
    code = compile(module, filename, "exec")
    return CompiledProgram(
        filename, source, result.lattice, code, module, result.plans, result.calls, result.inputs, result.module_types
    )


def load_program(path: str | Path, lattice=None) -> CompiledProgram:
    path = Path(path)
    return compile_source(path.read_text(encoding="utf-8"), str(path), lattice)
