"""Accept/reject corpus runner.

A manifest lists one case per line::

    <name> <dir> <accept|reject> [<diagnostic substring>] [<category>]

Fields are shell-quoted, so a substring containing spaces is written in
quotes.  ``dir`` is relative to the manifest and holds ``main.py`` plus
optional ``expected_stdout.txt`` (runtime oracle), ``inputs.json``
(``{"secret": {...}, "public": {...}}``) and ``lattice.lat``.

Reject cases mark the offending line with a trailing ``# fix: <code>``
(replace the line) or ``# fix-delete`` (replace it with ``pass``) so the
harness can confirm the case is rejected for that line alone.
"""

from __future__ import annotations

import json
import re
import shlex
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from ..compiler import compile_source, resolve_lattice
from ..diagnostics import FlowError

CATEGORIES = ("explicit-flow", "implicit-flow", "relabel", "opacity", "call-lifting", "pc-block", "transparency")
VERDICTS = ("accept", "reject")
OUTCOMES = ("pass", "wrong-verdict", "wrong-diagnostic", "runtime-mismatch")

_FIX = re.compile(r"#\s*fix(?::\s?(?P<code>.*)|-(?P<delete>delete))\s*$")


class ManifestError(Exception):
    """The manifest or a case directory is unusable; distinct from a failing case."""


@dataclass(frozen=True)
class CorpusCase:
    name: str
    directory: Path
    verdict: str
    diagnostic: str | None = None
    category: str | None = None

    @property
    def source_path(self) -> Path:
        return self.directory / "main.py"

    @property
    def expected_stdout_path(self) -> Path:
        return self.directory / "expected_stdout.txt"

    def source(self) -> str:
        return self.source_path.read_text(encoding="utf-8")

    def inputs(self) -> dict[str, dict[str, Any]]:
        path = self.directory / "inputs.json"
        data = json.loads(path.read_text(encoding="utf-8")) if path.is_file() else {}
        return {"secret": dict(data.get("secret", {})), "public": dict(data.get("public", {}))}

    def lattice(self):
        path = self.directory / "lattice.lat"
        return resolve_lattice(path if path.is_file() else None)

    def expected_stdout(self) -> bytes | None:
        path = self.expected_stdout_path
        return path.read_bytes() if path.is_file() else None


@dataclass
class CaseResult:
    case: CorpusCase
    outcome: str
    detail: str = ""
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.outcome == "pass"


@dataclass
class CorpusReport:
    results: list[CaseResult] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> int:
        return sum(r.passed for r in self.results)

    @property
    def failures(self) -> dict[str, int]:
        out = {o: 0 for o in OUTCOMES if o != "pass"}
        for r in self.results:
            if not r.passed:
                out[r.outcome] += 1
        return out

    @property
    def all_passed(self) -> bool:
        return self.passed == len(self.results)

    def verdicts(self) -> list[tuple[str, str]]:
        return [(r.case.name, r.outcome) for r in self.results]

    def by_category(self) -> dict[str, dict[str, int]]:
        table: dict[str, dict[str, int]] = {}
        for r in self.results:
            row = table.setdefault(r.case.category or "uncategorised", {o: 0 for o in OUTCOMES})
            row[r.outcome] += 1
        return table

    def to_dict(self) -> dict:
        return {
            "cases": [
                {
                    "name": r.case.name, "category": r.case.category, "expected": r.case.verdict,
                    "outcome": r.outcome, "detail": r.detail, "seconds": round(r.seconds, 6),
                }
                for r in self.results
            ],
            "passed": self.passed,
            "failures": self.failures,
            "by_category": self.by_category(),
            "seconds": round(self.seconds, 6),
        }


def parse_manifest(path: str | Path) -> list[CorpusCase]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ManifestError(f"cannot read manifest {path}: {exc}") from None
    base = path.parent
    cases: list[CorpusCase] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        try:
            fields = shlex.split(raw, comments=True)
        except ValueError as exc:
            raise ManifestError(f"{path}:{lineno}: {exc}") from None
        if not fields:
            continue
        if len(fields) < 3 or len(fields) > 5:
            raise ManifestError(f"{path}:{lineno}: expected 3 to 5 fields, got {len(fields)}")
        name, directory, verdict, *rest = fields
        if verdict not in VERDICTS:
            raise ManifestError(f"{path}:{lineno}: verdict must be accept or reject, got {verdict!r}")
        category = None
        if rest and rest[-1] in CATEGORIES:
            category = rest.pop()
        diagnostic = rest.pop(0) if rest else None
        if rest:
            raise ManifestError(f"{path}:{lineno}: unknown category {rest[0]!r}")
        if diagnostic is not None and verdict == "accept":
            raise ManifestError(f"{path}:{lineno}: accept case {name!r} cannot expect a diagnostic")
        if name in seen:
            raise ManifestError(f"{path}:{lineno}: duplicate case name {name!r}")
        seen.add(name)
        case = CorpusCase(name, (base / directory).resolve(), verdict, diagnostic or None, category)
        if not case.source_path.is_file():
            raise ManifestError(f"{path}:{lineno}: case {name!r} has no {case.source_path}")
        cases.append(case)
    return cases


def run_case(case: CorpusCase) -> CaseResult:
    """Compile one case in isolation and compare against its expectation."""
    start = time.perf_counter()
    outcome, detail = _evaluate(case)
    return CaseResult(case, outcome, detail, time.perf_counter() - start)


def _evaluate(case: CorpusCase) -> tuple[str, str]:
    source = case.source()
    try:
        program = compile_source(source, str(case.source_path), case.lattice())
    except FlowError as exc:
        if case.verdict == "accept":
            return "wrong-verdict", f"rejected: {exc}"
        if case.diagnostic and not any(case.diagnostic in d.message for d in exc.diagnostics):
            return "wrong-diagnostic", f"no diagnostic contains {case.diagnostic!r}; got: {exc}"
        return "pass", str(exc.diagnostics[0])
    if case.verdict == "reject":
        return "wrong-verdict", "accepted"
    expected = case.expected_stdout()
    if expected is None:
        return "pass", "accepted"
    inputs = case.inputs()
    try:
        actual = program.run(inputs["secret"], inputs["public"]).stdout.encode("utf-8")
    except Exception as exc:  # the program itself crashed
        return "runtime-mismatch", f"raised {type(exc).__name__}: {exc}"
    if actual != expected:
        return "runtime-mismatch", f"stdout {actual!r} != expected {expected!r}"
    return "pass", "accepted; stdout matches"


def run_corpus(manifest: str | Path, category: str | None = None) -> CorpusReport:
    cases = parse_manifest(manifest)
    if category is not None:
        cases = [c for c in cases if c.category == category]
    report = CorpusReport()
    start = time.perf_counter()
    report.results = [run_case(c) for c in cases]
    report.seconds = time.perf_counter() - start
    return report


def apply_fix(source: str) -> str:
    """Apply every ``# fix`` annotation in ``source``."""
    out: list[str] = []
    found = False
    for line in source.splitlines(keepends=True):
        m = _FIX.search(line)
        if m is None:
            out.append(line)
            continue
        found = True
        indent = line[: len(line) - len(line.lstrip())]
        code = "pass" if m.group("delete") else m.group("code").rstrip()
        out.append(f"{indent}{code}\n")
    if not found:
        raise ValueError("source has no '# fix' annotation")
    return "".join(out)


def check_fix(case: CorpusCase) -> list[str]:
    """Diagnostics left after applying the case's fix; empty means the fix works."""
    fixed = apply_fix(case.source())
    try:
        compile_source(fixed, str(case.source_path), case.lattice())
    except FlowError as exc:
        return [str(d) for d in exc.diagnostics]
    return []


def default_manifest() -> Path:
    """Manifest of the corpus shipped with the package."""
    return Path(__file__).resolve().parent.parent / "corpus" / "manifest.txt"
