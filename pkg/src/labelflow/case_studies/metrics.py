"""Count how often a source tree uses the labeling API.

Counting works on the token stream, so comments and string literals never
contribute.  Import lines and ``def``/``class`` names are skipped, which means
a file that merely re-exports the API scores zero.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
import tokenize
from dataclasses import asdict, dataclass, field
from pathlib import Path

# column -> API names that feed it
COLUMNS: dict[str, tuple[str, ...]] = {
    "declassify": ("declassify",),
    "fcall_mcall": ("fcall", "mcall", "chain"),
    "pc_block": ("pc_block",),
    "relabel": ("relabel",),
    "unchecked": ("unchecked_operation",),
    "side_effect_free": ("side_effect_free_attr",),
}
_COLUMN_OF = {name: col for col, names in COLUMNS.items() for name in names}

# any of these on a line makes it a security-annotated line
ANNOTATION_TOKENS = frozenset(_COLUMN_OF) | {"Labeled", "label_new", "lift_public"}


@dataclass
class ApiUsageCounts:
    declassify: int = 0
    fcall_mcall: int = 0
    pc_block: int = 0
    relabel: int = 0
    unchecked: int = 0
    labeled_annotations: int = 0
    side_effect_free: int = 0
    files_scanned: int = 0
    skipped: list[str] = field(default_factory=list)

    def row(self) -> tuple[int, int, int, int]:
        """The (declassify, fcall/mcall, pc_block, relabel) tuple."""
        return (self.declassify, self.fcall_mcall, self.pc_block, self.relabel)

    def add(self, other: ApiUsageCounts) -> None:
        for name in (*COLUMNS, "labeled_annotations", "files_scanned"):
            setattr(self, name, getattr(self, name) + getattr(other, name))
        self.skipped.extend(other.skipped)

    def to_dict(self) -> dict:
        return asdict(self)


def count_source(text: str) -> ApiUsageCounts:
    """Counts for one module's source text; raises ``tokenize.TokenError`` or
    ``SyntaxError`` on malformed input."""
    counts = ApiUsageCounts(files_scanned=1)
    annotated: set[int] = set()
    import_lines: set[int] = set()
    prev: tokenize.TokenInfo | None = None
    line_start = True
    tokens = list(tokenize.generate_tokens(io.StringIO(text).readline))
    for i, tok in enumerate(tokens):
        if tok.type in (tokenize.NEWLINE, tokenize.NL):
            line_start = True
            continue
        if tok.type in (tokenize.COMMENT, tokenize.INDENT, tokenize.DEDENT):
            continue
        if line_start and tok.type == tokenize.NAME and tok.string in ("import", "from"):
            # a logical import line may span several physical lines
            end = i
            while end < len(tokens) and tokens[end].type != tokenize.NEWLINE:
                end += 1
            import_lines.update(range(tok.start[0], tokens[min(end, len(tokens) - 1)].end[0] + 1))
        line_start = False
        if tok.type != tokenize.NAME or tok.start[0] in import_lines:
            prev = tok
            continue
        after_def = prev is not None and prev.type == tokenize.NAME and prev.string in ("def", "class")
        nxt = tokens[i + 1] if i + 1 < len(tokens) else None
        is_kwarg = nxt is not None and nxt.string == "=" and prev is not None and prev.string in ("(", ",")
        if not after_def and not is_kwarg:
            col = _COLUMN_OF.get(tok.string)
            if col is not None:
                setattr(counts, col, getattr(counts, col) + 1)
            if tok.string in ANNOTATION_TOKENS:
                annotated.add(tok.start[0])
        prev = tok
    counts.labeled_annotations = len(annotated)
    return counts


def count_api_usage(path: str | Path) -> ApiUsageCounts:
    """Aggregate counts over one ``.py`` file or every ``.py`` file below a directory."""
    root = Path(path)
    if not root.exists():
        raise FileNotFoundError(f"no such file or directory: {root}")
    files = [root] if root.is_file() else sorted(p for p in root.rglob("*.py") if p.is_file())
    total = ApiUsageCounts()
    for file in files:
        try:
            text = file.read_text(encoding="utf-8")
            total.add(count_source(text))
        except (OSError, UnicodeDecodeError, SyntaxError, tokenize.TokenError) as exc:
            total.skipped.append(f"{file}: {exc}")
    return total


def _format(counts: ApiUsageCounts) -> str:
    lines = [f"{name:20} {getattr(counts, name)}" for name in (*COLUMNS, "labeled_annotations", "files_scanned")]
    if counts.skipped:
        lines.append("skipped:")
        lines += [f"  {entry}" for entry in counts.skipped]
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="metrics", description="Count labeling API usage in Python sources.")
    sub = parser.add_subparsers(dest="command", required=True)
    count = sub.add_parser("count", help="count API calls and annotated lines")
    count.add_argument("path")
    count.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    args = parser.parse_args(argv)
    try:
        counts = count_api_usage(args.path)
    except FileNotFoundError as exc:
        print(f"metrics: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(counts.to_dict(), indent=2) if args.json else _format(counts))
    return 0


if __name__ == "__main__":
    sys.exit(main())
