"""Thin stand-in for the :mod:`ast` module built directly on ``_ast``.

Importing ``ast`` pulls in its unparser and an enum, which is a noticeable
share of a single-file build.  The checker only needs the node classes, a
parser, a transformer base and rendering of short expressions, so those are
provided here and the full module is imported only for the rare fallback.
"""

from __future__ import annotations

from _ast import *  # noqa: F401,F403  node classes
from _ast import AST, PyCF_ONLY_AST, Attribute, Constant, List, Name, Starred, Subscript, Tuple


def parse(source: str, filename: str = "<unknown>", mode: str = "exec") -> AST:
    return compile(source, filename, mode, PyCF_ONLY_AST)


def unparse(node: AST) -> str:
    text = _render(node)
    if text is not None:
        return text
    import ast

    return ast.unparse(node)


def _render(node: AST) -> str | None:
    """Source text for names, attribute paths, subscripts and constants."""
    if isinstance(node, Name):
        return node.id
    if isinstance(node, Attribute):
        base = _render(node.value)
        if base is None or isinstance(node.value, Constant):
            return None
        return f"{base}.{node.attr}"
    if isinstance(node, Subscript):
        base = _render(node.value)
        if base is None:
            return None
        if isinstance(node.slice, Tuple) and node.slice.elts:
            parts = [_render(e) for e in node.slice.elts]
            if None in parts:
                return None
            inner = ", ".join(parts)
        else:
            inner = _render(node.slice)
            if inner is None:
                return None
        return f"{base}[{inner}]"
    if isinstance(node, (Tuple, List)):
        parts = [_render(e) for e in node.elts]
        if None in parts:
            return None
        if isinstance(node, List):
            return "[" + ", ".join(parts) + "]"
        return "(" + ", ".join(parts) + ("," if len(parts) == 1 else "") + ")"
    if isinstance(node, Starred):
        inner = _render(node.value)
        return None if inner is None else "*" + inner
    if isinstance(node, Constant) and not isinstance(node.value, (complex, float)) and node.value is not Ellipsis:
        return repr(node.value)
    return None


def literal_eval(node: AST):
    import ast

    return ast.literal_eval(node)


def copy_location(new: AST, old: AST) -> AST:
    for attr in ("lineno", "col_offset", "end_lineno", "end_col_offset"):
        if attr in new._attributes and hasattr(old, attr):
            setattr(new, attr, getattr(old, attr))
    return new


class NodeTransformer:
    """Same contract as ``ast.NodeTransformer``: ``visit_<Class>`` may return a
    replacement node, a list of nodes, or ``None`` to delete."""

    def visit(self, node: AST):
        method = getattr(self, "visit_" + node.__class__.__name__, None)
        if method is None:
            return self.generic_visit(node)
        return method(node)

    def generic_visit(self, node: AST) -> AST:
        for field in node._fields:
            old = getattr(node, field, None)
            if isinstance(old, list):
                new: list = []
                for item in old:
                    if isinstance(item, AST):
                        item = self.visit(item)
                        if item is None:
                            continue
                        if not isinstance(item, AST):
                            new.extend(item)
                            continue
                    new.append(item)
                old[:] = new
            elif isinstance(old, AST):
                replacement = self.visit(old)
                if replacement is None:
                    delattr(node, field)
                else:
                    setattr(node, field, replacement)
        return node
