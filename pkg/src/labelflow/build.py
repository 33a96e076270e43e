"""Build driver: byte-compile sources, checking labelflow programs first.

``python -m labelflow.build FILE...`` writes ``__pycache__`` entries exactly
like ``py_compile``.  Files that import labelflow are type-checked and
label-erased before compilation; the checker is only loaded when such a
file is present, so plain projects pay nothing for it.
"""

from __future__ import annotations

import os
import sys
from importlib._bootstrap_external import _code_to_timestamp_pyc
from importlib.util import cache_from_source

MARKER = b"labelflow"


def build_file(path: str) -> None:
    with open(path, "rb") as fh:
        data = fh.read()
    if MARKER in data:
        from .compiler import compile_source

        code = compile_source(data.decode("utf-8"), path).code
    else:
        code = compile(data, path, "exec", dont_inherit=True)
    st = os.stat(path)
    target = cache_from_source(path)
    os.makedirs(os.path.dirname(target), exist_ok=True)
    with open(target, "wb") as fh:
        fh.write(_code_to_timestamp_pyc(code, st.st_mtime, st.st_size))


def main(argv: list[str] | None = None) -> int:
    args = sys.argv[1:] if argv is None else argv
    status = 0
    for path in args:
        try:
            build_file(path)
        except SyntaxError as exc:
            print(f"{path}: {exc}", file=sys.stderr)
            status = 1
        except Exception as exc:  # FlowError and I/O problems alike
            print(f"{path}: build failed\n{exc}", file=sys.stderr)
            status = 1
    return status


if __name__ == "__main__":
    sys.exit(main())
