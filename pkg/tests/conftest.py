from __future__ import annotations

import pytest

from labelflow import check_source, compile_source

HEADER = "from labelflow import *\nfrom labelflow.diamond import A, B, AB\n"
LABELS = ("Public", "A", "B", "AB")


def program(body: str, header: str = HEADER) -> str:
    return header + body


def accepts(body: str, **kw) -> bool:
    return not check_source(program(body), **kw)


def kinds(body: str, **kw) -> set[str]:
    return {d.kind for d in check_source(program(body), **kw)}


def messages(body: str, **kw) -> str:
    return "\n".join(d.message for d in check_source(program(body), **kw))


def run(body: str, secret: dict | None = None, public: dict | None = None) -> str:
    return compile_source(program(body)).run(secret, public).stdout


@pytest.fixture
def diamond():
    from labelflow.diamond import DIAMOND

    return DIAMOND
