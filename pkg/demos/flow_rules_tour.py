"""A short tour of what the label checker accepts and rejects.

Run with ``python demos/flow_rules_tour.py``.  Each snippet is checked on
the diamond lattice (Public below A and B, both below AB) and its verdict
printed with the first diagnostic, if any.
"""

from __future__ import annotations

from labelflow import check_source, compile_source

HEADER = "from labelflow import *\nfrom labelflow.diamond import A, B, AB\n"

SNIPPETS = [
    ("raise a label with relabel", "x = label_new(5, A)\ny = relabel(x, AB)\n"),
    ("lower a label with relabel", "x = label_new(5, AB)\ny = relabel(x, A)\n"),
    ("secret into a public variable", "x = label_new(5, A)\ny: int = x\n"),
    ("branch on a secret without a pc_block", "x = label_new(5, A)\ny = label_new(0, A)\nif x > lift_public(3):\n    y = label_new(1, A)\n"),
    (
        "branch on a secret inside a pc_block",
        "x = label_new(5, A)\ny = label_new(0, A)\nwith pc_block(A):\n    if x > lift_public(3):\n        y = label_new(1, A)\n",
    ),
    ("peek inside a labeled value", "x = label_new('hi', A)\nn = x.upper\n"),
    ("lift a pure function over labels", "def add(a, b):\n    return a + b\nz = fcall(add(label_new(1, A), label_new(2, B)))\n"),
    ("print a secret", "x = label_new(5, A)\nprint(x)\n"),
    ("print after declassifying", "x = label_new(5, A)\nprint(declassify(x))\n"),
]


def main() -> None:
    for title, body in SNIPPETS:
        diags = check_source(HEADER + body)
        verdict = "accept" if not diags else "reject"
        print(f"{verdict:7} {title}")
        if diags:
            print(f"        {diags[0]}")
    prog = compile_source(HEADER + SNIPPETS[6][1])
    print(f"\nlabel of z after fcall: {prog.label_of('z')}")
    print("erased program that actually runs:")
    print("    " + prog.python_source().replace("\n", "\n    "))


if __name__ == "__main__":
    main()
