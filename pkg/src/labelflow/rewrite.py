"""Label erasure: turn a checked module into plain Python.

Every primitive is replaced by its payload argument, ``pc_block`` bodies are
inlined and annotations are dropped, so the runtime value of
``Labeled[T, L]`` is exactly the ``T`` payload.
"""

from __future__ import annotations

from . import _syntax as ast

from .checker import CheckResult

RUNTIME_NAME = "__lf_rt__"


class _Eraser(ast.NodeTransformer):
    def __init__(self, result: CheckResult):
        self.erase = result.erase_calls
        self.pc_blocks = result.pc_blocks
        self.drop = result.drop_nodes

    def visit(self, node):
        if id(node) in self.drop and isinstance(node, ast.stmt):
            return None
        return super().visit(node)

    def visit_Call(self, node: ast.Call):
        action = self.erase.get(id(node))
        self.generic_visit(node)
        if action is None:
            return node
        if action[0] == "arg0":
            return node.args[0]
        if action[0] == "chain":
            return ast.Call(func=node.args[1], args=[node.args[0]], keywords=[])
        kind, key = action[1], action[2]
        args: list[ast.expr] = [ast.Constant(key)]
        default = node.args[2] if len(node.args) > 2 else next((k.value for k in node.keywords if k.arg == "default"), None)
        if default is not None:
            args.append(default)
        func = ast.Attribute(ast.Name(RUNTIME_NAME, ast.Load()), f"{kind}_input", ast.Load())
        return ast.Call(func=func, args=args, keywords=[])

    def visit_With(self, node: ast.With):
        self.generic_visit(node)
        if id(node) in self.pc_blocks:
            return node.body or [ast.Pass()]
        return node

    def visit_FunctionDef(self, node: ast.FunctionDef):
        node.decorator_list = [d for d in node.decorator_list if id(d) not in self.drop]
        node.returns = None
        self.generic_visit(node)
        return node

    def visit_arg(self, node: ast.arg):
        node.annotation = None
        return node

    def visit_ClassDef(self, node: ast.ClassDef):
        fields = []
        for stmt in node.body:
            if isinstance(stmt, ast.AnnAssign):
                # dataclass needs the annotation to exist; its content is irrelevant
                stmt.annotation = ast.Constant(ast.unparse(stmt.annotation))
                fields.append(id(stmt))
        self._class_fields = set(fields)
        self.generic_visit(node)
        return node

    def visit_AnnAssign(self, node: ast.AnnAssign):
        if id(node) in getattr(self, "_class_fields", ()):
            if node.value is not None:
                node.value = self.visit(node.value)
            return node
        if node.value is None:
            return None
        value = self.visit(node.value)
        return ast.copy_location(ast.Assign(targets=[node.target], value=value), node)


def _fill_and_locate(node: ast.AST, lineno: int, col: int) -> None:
    """One pass that fills empty bodies with ``pass`` and copies missing locations."""
    if "lineno" in node._attributes:
        if getattr(node, "lineno", None) is None:
            node.lineno, node.col_offset = lineno, col
            node.end_lineno, node.end_col_offset = lineno, col
        else:
            lineno, col = node.lineno, getattr(node, "col_offset", col)
            if getattr(node, "end_lineno", None) is None:
                node.end_lineno, node.end_col_offset = lineno, col
    for name in node._fields:
        value = getattr(node, name, None)
        if isinstance(value, list):
            if not value and name == "body":
                value.append(ast.Pass())
            for item in value:
                if isinstance(item, ast.AST):
                    _fill_and_locate(item, lineno, col)
        elif isinstance(value, ast.AST):
            _fill_and_locate(value, lineno, col)


def erase(tree: ast.Module, result: CheckResult) -> ast.Module:
    """Rewrite ``tree`` in place into label-free Python and return it."""
    out = _Eraser(result).visit(tree)
    _fill_and_locate(out, 1, 0)
    return out
