from __future__ import annotations

from ._record import Frozen

# explicit/implicit/opacity/relabel are the four flow categories; the rest
# report programs the checker refuses for structural reasons.
KINDS = ("explicit", "implicit", "opacity", "relabel", "side-effect", "control", "scope", "unsupported", "lattice")


class Diagnostic(Frozen):
    __slots__ = ("kind", "message", "filename", "line", "col", "source_label", "target_label")
    _defaults = {"col": 0, "source_label": None, "target_label": None}

    @property
    def location(self) -> str:
        return f"{self.filename}:{self.line}"

    def __str__(self) -> str:
        return f"{self.filename}:{self.line}:{self.col + 1}: error[{self.kind}]: {self.message}"


class FlowError(Exception):
    """Compilation refused; ``diagnostics`` lists every problem found."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(map(str, self.diagnostics)))

    @property
    def kinds(self) -> set[str]:
        return {d.kind for d in self.diagnostics}
