from __future__ import annotations

import itertools
from functools import reduce

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from labelflow import DIAMOND, compile_source

from conftest import LABELS, accepts, kinds, messages, program, run

ADD3 = "def add(*xs):\n    total = 0\n    for x in xs:\n        total = total + x\n    return total\n"


def oracle_join(labels) -> str:
    return reduce(DIAMOND.join_name, (DIAMOND.name_of(x) for x in labels), DIAMOND.bottom)


def compiled(body: str):
    return compile_source(program(body))


@pytest.mark.parametrize(
    "labels", [c for n in (1, 2, 3) for c in itertools.product(LABELS, repeat=n)], ids="-".join
)
def test_fcall_result_is_join(labels):
    args = ", ".join(f"label_new({i}, {lab})" for i, lab in enumerate(labels))
    body = ADD3 + f"r = fcall(add({args}))\n"
    expected = oracle_join(labels)
    prog = compiled(body)
    assert prog.label_of("r") == expected
    record = prog.calls[-1]
    assert record.kind == "function" and record.result_label == expected
    assert record.arg_labels == tuple(DIAMOND.name_of(x) for x in labels)


def test_fcall_examples():
    foo = "def foo(a, b):\n    return a + b\n"
    body = foo + "x = label_new(1, A)\ny = 2\nz = fcall(foo(x, relabel(y, A)))\nw = fcall(foo(x, y))\n"
    prog = compiled(body + "print(declassify(z), declassify(w))\n")
    assert prog.label_of("z") == prog.label_of("w") == "A"
    assert prog.run().stdout == "3 3\n"
    assert compiled("z = fcall(int('4'))\n").label_of("z") == "Public"
    assert compiled("import json\ns = label_new('[1]', A)\nv = fcall(json.loads(s))\n").label_of("v") == "A"


def test_fcall_rejects_labeled_parameters_and_mutable_mismatch():
    typed = "def f(v: Labeled[int, A]) -> int:\n    return 0\nz = fcall(f(label_new(1, A)))\n"
    assert not accepts(typed)
    mut = "def f(xs, n):\n    xs.append(n)\n    return 0\nz = fcall(f(label_new([1], A), label_new(2, B)))\n"
    assert not accepts(mut)
    same = "def f(xs, n):\n    xs.append(n)\n    return 0\nz = fcall(f(label_new([1], A), label_new(2, A)))\n"
    assert accepts(same)


@pytest.mark.parametrize("label", LABELS)
@pytest.mark.parametrize(
    "chain_text", [".strip()", ".strip().upper()", ".strip().upper().count('X')"], ids=["len1", "len2", "len3"]
)
def test_mcall_preserves_receiver_label(label, chain_text):
    body = f"s = label_new(' x ', {label})\nm = mcall(s{chain_text})\n"
    prog = compiled(body)
    expected = DIAMOND.name_of(label)
    assert prog.label_of("m") == expected
    assert prog.calls[-1].kind == "method-chain" and prog.calls[-1].root_label == expected
    assert accepts(body + f"p: Labeled[{'int' if 'count' in chain_text else 'str'}, {label}] = m\n")


def test_mcall_examples():
    assert run("k = label_new('abc', B)\nr = mcall(k.isalpha())\nprint(declassify(r))\n") == "True\n"
    assert compiled("xs = lift_public([1, 2])\nn = mcall(xs.__len__())\n").label_of("n") == "Public"
    body = "xs = label_new([1, 2], A)\nmcall(xs.append(3))\nn = mcall(xs.count(3))\nprint(declassify(n))\n"
    assert run(body) == "1\n"
    assert "mcall chain arguments must be unlabeled" in messages(
        "s = label_new('hello', A)\nn = mcall(s.count(label_new('l', B)))\n"
    )


def test_mcall_field_access():
    rec = "from dataclasses import dataclass\n@dataclass\nclass P:\n    start_row: int\n    col: int\n"
    prog = compiled(rec + "p = label_new(P(3, 4), B)\nr = mcall(p.start_row)\nprint(declassify(r))\n")
    assert prog.label_of("r") == "B"
    assert prog.calls[-1].kind == "field-access"
    assert prog.run().stdout == "3\n"
    assert compiled(rec + "q = lift_public(P(1, 2))\nr = mcall(q.col)\n").label_of("r") == "Public"


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6), st.text(alphabet="abcxyz", min_size=0, max_size=6))
def test_mcall_field_projection_identity(r, name):
    rec = "from dataclasses import dataclass\n@dataclass\nclass P:\n    row: int\n    name: str\n"
    out = run(rec + f"p = label_new(P({r}, {name!r}), B)\nprint(declassify(mcall(p.row)), declassify(mcall(p.name)))\n")
    assert out == f"{r} {name}\n"


def test_chain_examples():
    prog = compiled("x = label_new(1, A)\ny = chain(x, lambda v: lift_public(v + 1))\nprint(declassify(y))\n")
    assert prog.label_of("y") == "A" and prog.run().stdout == "2\n"
    assert compiled("y = chain(lift_public(1), lambda v: label_new(v, B))\n").label_of("y") == "B"
    nested = "x = label_new(1, A)\ny = label_new(2, B)\nz = chain(x, lambda u: chain(y, lambda w: lift_public(u + w)))\n"
    assert compiled(nested).label_of("z") == "AB"


def test_chain_confines_payload():
    assert "for mutation of `stash`" in messages(
        "stash = []\nx = label_new(1, A)\ny = chain(x, lambda v: lift_public(stash.append(v)))\n"
    )
    assert "is not vetted" in messages("x = label_new(1, A)\ny = chain(x, lambda v: lift_public(print(v)))\n")
    assert not accepts("x = label_new(1, A)\ny = chain(x, lambda v: v)\n")


@pytest.mark.parametrize("label", LABELS)
def test_fcall_and_chain_agree(label):
    body = (
        "@side_effect_free_attr\ndef sq(v: int) -> int:\n    return v * v\n"
        f"x = label_new(6, {label})\na = fcall(sq(x))\nb = chain(x, lambda v: lift_public(sq(v)))\n"
        "print(declassify(a), declassify(b))\n"
    )
    prog = compiled(body)
    assert prog.label_of("a") == prog.label_of("b") == DIAMOND.name_of(label)
    assert prog.run().stdout == "36 36\n"


FUNCS = {
    "add": ("def g(*xs):\n    return sum(xs)\n", sum),
    "mul": ("def g(*xs):\n    out = 1\n    for x in xs:\n        out = out * x\n    return out\n", None),
    "maxi": ("def g(*xs):\n    return max(xs)\n", max),
}


@settings(max_examples=30, deadline=None)
@given(
    st.sampled_from(sorted(FUNCS)),
    st.lists(st.tuples(st.integers(-20, 20), st.sampled_from(LABELS)), min_size=1, max_size=3),
)
def test_fcall_payload_law(fname, args):
    src, py = FUNCS[fname]
    raw = [v for v, _ in args]
    if py is None:
        expected = 1
        for v in raw:
            expected *= v
    else:
        expected = py(raw)
    call = ", ".join(f"label_new({v}, {lab})" for v, lab in args)
    assert run(src + f"r = fcall(g({call}))\nprint(declassify(r))\n") == f"{expected}\n"


def test_unlifted_call_with_labeled_argument_rejected():
    body = "def double(v):\n    return v * 2\nx = label_new(21, A)\ny = double(x)\n"
    assert kinds(body) == {"explicit"}
    assert "parameter `v` of `double`" in messages(body)
