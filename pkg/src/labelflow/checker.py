"""Static label checker for the embedded IFC language.

The checker walks a Python module, infers a label skeleton for every
expression, tracks the program-counter label through ``pc_block`` regions
and labeled branches, and records what the eraser must strip.  Violations
are collected as :class:`Diagnostic` objects; nothing is executed.
"""

from __future__ import annotations

from . import _syntax as ast
from contextlib import contextmanager

from ._record import Frozen, Mutable
from .diagnostics import Diagnostic
from .lattice import Lattice, LatticeError, LatticeSpec, define_lattice
from .ltypes import (
    ANY, BOOL, EMPTY, ERR, FLOAT, FUNCTION_LIKE, INT, NONE, SCALARS, STR,
    ClassInfo, FuncSig, Label, LVar, Param, TAny, TBuiltin, TClass, TDict, TEmpty, TErr,
    TFunc, TLabel, TLabeled, TLambda, TList, TModule, TObj, TPrim, TScalar, TSet, TTuple,
    TTypeVar, Ty, contains_labels, element_type, is_mutable, labels_in, strip_labels, subst,
)
from .plan import AssignSite, BlockRewritePlan, CallRewriteRecord, CallSite, ConditionSite, PcEvent
from .primitives import PRIMITIVES
from .vetting import MUTATING_METHODS, PURE_METHODS, STRUCTURAL_BUILTINS, builtin_is_pure

LIB = "labelflow"

_BUILTIN_NAMES = frozenset(dir(__import__("builtins")))

_CONTAINER_ANN = {
    "list": "list", "List": "list", "Sequence": "list", "Iterable": "list", "Iterator": "list",
    "MutableSequence": "list", "set": "set", "Set": "set", "frozenset": "fset", "FrozenSet": "fset",
    "AbstractSet": "fset", "dict": "dict", "Dict": "dict", "Mapping": "dict", "MutableMapping": "dict",
    "tuple": "tuple", "Tuple": "tuple",
}


class Binding(Mutable):
    __slots__ = ("ty", "line", "fresh")
    _defaults = {"fresh": False}


class FuncCtx(Mutable):
    __slots__ = ("sig", "locals", "globals", "nonlocals", "exit_taint", "fresh_self")
    _defaults = {"fresh_self": False}


class Scope(Mutable):
    __slots__ = ("kind", "pc", "func", "vars")  # kind: module | function | branch | comp
    _factories = {"vars": dict}


class CheckResult(Mutable):
    __slots__ = (
        "lattice", "diagnostics", "erase_calls", "pc_blocks", "drop_nodes", "plans", "calls", "inputs",
        "module_types",
    )


_SCOPE_DEFS = (ast.FunctionDef, ast.AsyncFunctionDef, ast.ClassDef)
_NESTED_EXPR_SCOPES = (ast.Lambda, ast.ListComp, ast.SetComp, ast.DictComp, ast.GeneratorExp)


def _assigned_names(body: list[ast.stmt]) -> tuple[set[str], set[str], set[str]]:
    """Locals, globals and nonlocals of a function body, not descending into nested scopes."""
    names: set[str] = set()
    glob: set[str] = set()
    nonloc: set[str] = set()

    stack: list = list(body)
    while stack:
        node = stack.pop()
        if isinstance(node, _SCOPE_DEFS):
            names.add(node.name)
            stack.extend(node.decorator_list)
            continue
        if isinstance(node, _NESTED_EXPR_SCOPES):
            continue
        if isinstance(node, ast.Name):
            if not isinstance(node.ctx, ast.Load):
                names.add(node.id)
            continue
        if isinstance(node, ast.Global):
            glob.update(node.names)
        elif isinstance(node, ast.Nonlocal):
            nonloc.update(node.names)
        elif isinstance(node, (ast.Import, ast.ImportFrom)):
            for alias in node.names:
                names.add((alias.asname or alias.name).split(".")[0])
        elif isinstance(node, ast.ExceptHandler) and node.name:
            names.add(node.name)
        for field in node._fields:
            value = getattr(node, field, None)
            if isinstance(value, list):
                stack.extend(v for v in value if isinstance(v, ast.AST))
            elif isinstance(value, ast.AST):
                stack.append(value)

    return names - glob - nonloc, glob, nonloc


def _root_name(node: ast.AST) -> str | None:
    while isinstance(node, (ast.Subscript, ast.Attribute)):
        node = node.value
    return node.id if isinstance(node, ast.Name) else None


def _has_empty(ty: Ty) -> bool:
    if isinstance(ty, TEmpty):
        return True
    if isinstance(ty, (TList, TSet)):
        return _has_empty(ty.elem)
    if isinstance(ty, TDict):
        return _has_empty(ty.key) or _has_empty(ty.val)
    return False


def _is_fresh_display(node: ast.AST) -> bool:
    if isinstance(node, (ast.List, ast.Dict, ast.Set, ast.ListComp, ast.DictComp, ast.SetComp)):
        return True
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in ("list", "dict", "set"):
        return True
    return False


class Checker:
    def __init__(self, tree: ast.Module, filename: str, lattice: Lattice):
        self.tree = tree
        self.filename = filename
        self.lat = lattice
        self.diags: list[Diagnostic] = []
        self.erase_calls: dict[int, tuple] = {}
        self.pc_blocks: set[int] = set()
        self.drop_nodes: set[int] = set()
        self.plans: list[BlockRewritePlan] = []
        self.calls: list[CallRewriteRecord] = []
        self.inputs: dict[str, tuple[str, Ty]] = {}
        self.module_scope = Scope("module", lattice.bottom, None)
        self.scopes: list[Scope] = [self.module_scope]
        self.func: FuncCtx | None = None
        self.pc: Label = lattice.bottom
        self.pc_depth = 0
        self.blocks: list[BlockRewritePlan] = []
        self.loops: list[Label] = []
        self.dropped: dict[str, int] = {}
        self.classes: dict[str, ClassInfo] = {}
        self.skip: set[int] = set()
        self.deferred: list[tuple] = []
        self.aliases: dict[str, ast.expr] = {}

    # ------------------------------------------------------------------ labels
    @property
    def bottom(self) -> str:
        return self.lat.bottom

    def leq(self, a: Label, b: Label) -> bool:
        if a == b or a == self.bottom:
            return True
        if isinstance(a, str) and isinstance(b, str):
            return self.lat.leq(a, b)
        return False

    def join(self, a: Label, b: Label, node: ast.AST | None = None) -> Label | None:
        if a == b or b == self.bottom:
            return a
        if a == self.bottom:
            return b
        if isinstance(a, str) and isinstance(b, str):
            return self.lat.join_name(a, b)
        if node is not None:
            self.error(node, "lattice", f"cannot resolve the join of {a} and {b}: label variables only join with themselves or Public")
        return None

    def join_all(self, labels, node) -> Label | None:
        out: Label = self.bottom
        for lab in labels:
            out = self.join(out, lab, node)
            if out is None:
                return None
        return out

    def eff_pc(self) -> Label:
        if self.func is None:
            return self.pc
        return self.join(self.pc, self.func.exit_taint) or self.pc

    def vetting(self) -> bool:
        return (
            self.pc_depth > 0
            or self.eff_pc() != self.bottom
            or (self.func is not None and self.func.sig.side_effect_free)
        )

    # ------------------------------------------------------------- reporting
    def error(self, node: ast.AST, kind: str, message: str, src=None, dst=None) -> None:
        self.diags.append(
            Diagnostic(
                kind,
                message,
                self.filename,
                getattr(node, "lineno", 0),
                getattr(node, "col_offset", 0),
                None if src is None else str(src),
                None if dst is None else str(dst),
            )
        )

    @property
    def block(self) -> BlockRewritePlan | None:
        return self.blocks[-1] if self.blocks else None

    # ------------------------------------------------------------------ entry
    def run(self) -> CheckResult:
        self.select_lattice()
        self.declare_module()
        self.block_stmts(self.tree.body, top=True)
        while self.deferred:
            item = self.deferred.pop(0)
            self.check_function(*item)
        return CheckResult(
            self.lat, self.diags, self.erase_calls, self.pc_blocks, self.drop_nodes,
            self.plans, self.calls, self.inputs,
            {k: b.ty for k, b in self.module_scope.vars.items()},
        )

    def select_lattice(self) -> None:
        for stmt in self.tree.body:
            call = stmt.value if isinstance(stmt, ast.Expr) else None
            if not (isinstance(call, ast.Call) and isinstance(call.func, (ast.Name, ast.Attribute))):
                continue
            name = call.func.id if isinstance(call.func, ast.Name) else call.func.attr
            if name != "use_lattice":
                continue
            self.drop_nodes.add(id(stmt))
            self.skip.add(id(stmt))
            try:
                kw = {k.arg: ast.literal_eval(k.value) for k in call.keywords}
                spec = LatticeSpec(kw["levels"], [tuple(e) for e in kw.get("edges", ())], kw.get("bottom"))
                if spec.bottom is None:
                    raise LatticeError("missing bottom")
                self.lat = define_lattice(spec)
                self.pc = self.module_scope.pc = self.lat.bottom
            except (LatticeError, KeyError, ValueError, TypeError) as exc:
                self.error(stmt, "lattice", f"invalid lattice declaration: {exc}")

    # ------------------------------------------------------- module prepass
    def declare_module(self) -> None:
        body = self.tree.body
        for stmt in body:
            if isinstance(stmt, (ast.Import, ast.ImportFrom)):
                self.do_import(stmt)
                self.skip.add(id(stmt))
            elif isinstance(stmt, ast.ClassDef):
                info = ClassInfo(stmt.name)
                self.classes[stmt.name] = info
                self.bind_fresh(stmt.name, TClass(info), stmt)
        for stmt in body:
            if isinstance(stmt, ast.Assign) and len(stmt.targets) == 1 and isinstance(stmt.targets[0], ast.Name):
                name = stmt.targets[0].id
                value = stmt.value
                if isinstance(value, ast.Call) and ast.unparse(value.func).split(".")[-1] == "TypeVar":
                    arg = value.args[0] if value.args else None
                    var = arg.value if isinstance(arg, ast.Constant) else name
                    self.bind_fresh(name, TLabel(LVar(var)), stmt)
                    self.skip.add(id(stmt))
                elif self.looks_like_type(value):
                    self.bind_fresh(name, TTypeVar(name), stmt)
                    self.aliases[name] = value
                    self.skip.add(id(stmt))
                    self.drop_nodes.add(id(stmt))
        for name, value in list(self.aliases.items()):
            self.module_scope.vars[name] = Binding(TTypeVarAlias(self.ann(value)), value.lineno)
        for stmt in body:
            if isinstance(stmt, ast.ClassDef):
                self.declare_class(stmt, self.classes[stmt.name])
        for stmt in body:
            if isinstance(stmt, ast.FunctionDef):
                sig = self.make_sig(stmt)
                self.bind_fresh(stmt.name, TFunc(sig), stmt)
                self.skip.add(id(stmt))
                self.deferred.append((stmt, sig, None))
            elif isinstance(stmt, ast.AsyncFunctionDef):
                self.error(stmt, "unsupported", "async functions are not supported")
                self.skip.add(id(stmt))

    def looks_like_type(self, node: ast.expr) -> bool:
        if isinstance(node, ast.Subscript):
            base = node.value
            name = base.id if isinstance(base, ast.Name) else (base.attr if isinstance(base, ast.Attribute) else None)
            return name in _CONTAINER_ANN or name in ("Labeled", "Optional", "Union")
        return False

    def do_import(self, stmt: ast.stmt) -> None:
        if self.eff_pc() != self.bottom:
            self.error(stmt, "unsupported", "imports under a raised pc are not supported")
        if isinstance(stmt, ast.Import):
            if all(a.name == LIB or a.name.startswith(LIB + ".") for a in stmt.names):
                self.drop_nodes.add(id(stmt))
            for alias in stmt.names:
                if alias.asname:
                    self.bind_fresh(alias.asname, TModule(alias.name), stmt)
                else:
                    self.bind_fresh(alias.name.split(".")[0], TModule(alias.name.split(".")[0]), stmt)
            return
        mod = stmt.module or ""
        for alias in stmt.names:
            if alias.name == "*":
                if mod == LIB or mod.startswith(LIB + "."):
                    self.drop_nodes.add(id(stmt))
                    for name in PRIMITIVES + ("Labeled",):
                        self.bind_fresh(name, TPrim(name), stmt)
                    for level in self.lat.levels:
                        self.bind_fresh(level, TLabel(level), stmt)
                    self.bind_fresh("Public", TLabel(self.bottom), stmt)
                else:
                    self.error(stmt, "unsupported", f"star import from {mod} is not supported")
                continue
            local = alias.asname or alias.name
            if mod == LIB or mod.startswith(LIB + "."):
                ty = self.lib_name(mod, alias.name, stmt)
                self.drop_nodes.add(id(stmt))
            else:
                ty = TBuiltin(f"{mod}.{alias.name}")
            self.bind_fresh(local, ty, stmt)

    def lib_name(self, mod: str, name: str, node: ast.AST) -> Ty:
        if name in PRIMITIVES or name == "Labeled":
            return TPrim(name)
        if name == "Public":
            return TLabel(self.bottom)
        if mod.endswith("diamond") or mod == LIB:
            if name in self.lat.levels:
                return TLabel(name)
            if name in ("A", "B", "AB"):
                self.error(node, "lattice", f"label {name} is not a level of the active lattice")
                return ERR
        if mod == LIB and name in ("diamond",):
            return TModule(f"{LIB}.{name}")
        return TModule(f"{mod}.{name}")

    def bind_fresh(self, name: str, ty: Ty, node: ast.AST, fresh: bool = False) -> None:
        self.scopes[-1].vars[name] = Binding(ty, getattr(node, "lineno", 0), fresh)

    # ---------------------------------------------------------- annotations
    def ann(self, node: ast.expr | None) -> Ty:
        if node is None:
            return ANY
        if isinstance(node, ast.Constant):
            if node.value is None:
                return NONE
            if isinstance(node.value, str):
                try:
                    return self.ann(ast.parse(node.value, mode="eval").body)
                except SyntaxError:
                    return ANY
            return ANY
        if isinstance(node, ast.Name):
            if node.id in SCALARS:
                return SCALARS[node.id]
            kind = _CONTAINER_ANN.get(node.id)
            if kind:
                return self.container_ann(kind, [])
            found = self.lookup(node.id)
            if found is not None:
                ty = found.ty
                if isinstance(ty, TTypeVarAlias):
                    return ty.target
                if isinstance(ty, TClass):
                    return TObj(ty.info.name)
            return ANY
        if isinstance(node, ast.BinOp) and isinstance(node.op, ast.BitOr):
            left, right = self.ann(node.left), self.ann(node.right)
            if right == NONE:
                return left
            if left == NONE:
                return right
            if contains_labels(left) or contains_labels(right):
                self.error(node, "unsupported", "unions of labeled types are not supported")
                return ERR
            return ANY
        if isinstance(node, ast.Subscript):
            base = node.value
            bname = base.id if isinstance(base, ast.Name) else (base.attr if isinstance(base, ast.Attribute) else "")
            args = list(node.slice.elts) if isinstance(node.slice, ast.Tuple) else [node.slice]
            if bname == "Labeled":
                if len(args) != 2:
                    self.error(node, "unsupported", "Labeled takes a payload type and a label")
                    return ERR
                payload = self.ann(args[0])
                label = self.label_arg(args[1])
                if label is None:
                    return ERR
                if contains_labels(payload):
                    self.error(node, "unsupported", "Labeled payloads must not contain labeled values")
                    return ERR
                return TLabeled(label, payload)
            if bname == "Optional":
                return self.ann(args[0])
            if bname == "Union":
                tys = [self.ann(a) for a in args if not (isinstance(a, ast.Constant) and a.value is None)]
                if len(tys) == 1:
                    return tys[0]
                if any(map(contains_labels, tys)):
                    self.error(node, "unsupported", "unions of labeled types are not supported")
                    return ERR
                return ANY
            kind = _CONTAINER_ANN.get(bname)
            if kind:
                return self.container_ann(kind, args)
            return ANY
        return ANY

    def container_ann(self, kind: str, args: list[ast.expr]) -> Ty:
        if kind == "tuple":
            if not args:
                return TList(ANY, frozen=True)
            if len(args) == 2 and isinstance(args[1], ast.Constant) and args[1].value is Ellipsis:
                return TList(self.ann(args[0]), frozen=True)
            return TTuple(tuple(self.ann(a) for a in args))
        if kind == "dict":
            if len(args) != 2:
                return TDict(ANY, ANY)
            return TDict(self.ann(args[0]), self.ann(args[1]))
        elem = self.ann(args[0]) if args else ANY
        if kind == "list":
            return TList(elem)
        if kind == "fset":
            return TList(elem, frozen=True)
        return TSet(elem)

    def label_arg(self, node: ast.expr) -> Label | None:
        if isinstance(node, ast.Constant) and isinstance(node.value, str):
            if node.value in self.lat or node.value == "Public":
                return self.lat.name_of(node.value)
            self.error(node, "lattice", f"unknown label {node.value!r}")
            return None
        ty = self.expr(node)
        if isinstance(ty, TLabel):
            return ty.label
        if not isinstance(ty, TErr):
            self.error(node, "lattice", f"expected a label, found {ty}")
        return None

    # ------------------------------------------------------------ signatures
    def make_sig(self, fdef: ast.FunctionDef, owner: str | None = None) -> FuncSig:
        args = fdef.args
        positional = args.posonlyargs + args.args
        defaults = [False] * (len(positional) - len(args.defaults)) + [True] * len(args.defaults)
        params: list[Param] = []
        is_static = any(isinstance(d, ast.Name) and d.id == "staticmethod" for d in fdef.decorator_list)
        for i, (a, has_def) in enumerate(zip(positional, defaults)):
            if owner is not None and i == 0 and not is_static:
                continue
            params.append(Param(a.arg, self.ann(a.annotation), has_def))
        for a, d in zip(args.kwonlyargs, args.kw_defaults):
            params.append(Param(a.arg, self.ann(a.annotation), d is not None))
        returns = ANY if fdef.returns is None else self.ann(fdef.returns)
        lvars = set()
        for ty in [p.ty for p in params] + [returns]:
            lvars.update(v for v in labels_in(ty) if isinstance(v, LVar))
        sef = False
        for dec in fdef.decorator_list:
            dty = self.lookup_quiet(dec)
            if isinstance(dty, TPrim) and dty.name == "side_effect_free_attr":
                sef = True
                self.drop_nodes.add(id(dec))
        return FuncSig(
            fdef.name, params, returns, frozenset(lvars), sef,
            args.vararg is not None, args.kwarg is not None, fdef.lineno,
            owner is not None and not is_static, owner,
        )

    def lookup_quiet(self, node: ast.expr) -> Ty | None:
        if isinstance(node, ast.Name):
            found = self.lookup(node.id)
            return found.ty if found else None
        if isinstance(node, ast.Attribute):
            base = self.lookup_quiet(node.value)
            if isinstance(base, TModule) and base.name.startswith(LIB):
                return self.lib_name(base.name, node.attr, node)
        return None

    def declare_class(self, cdef: ast.ClassDef, info: ClassInfo) -> None:
        info.is_dataclass = any("dataclass" in ast.unparse(d) for d in cdef.decorator_list)
        init_params: list[Param] = []
        for stmt in cdef.body:
            if isinstance(stmt, ast.AnnAssign) and isinstance(stmt.target, ast.Name):
                ty = self.ann(stmt.annotation)
                info.fields[stmt.target.id] = ty
                if "ClassVar" not in ast.unparse(stmt.annotation):
                    init_params.append(Param(stmt.target.id, ty, stmt.value is not None))
            elif isinstance(stmt, ast.FunctionDef):
                sig = self.make_sig(stmt, owner=info.name)
                info.methods[stmt.name] = sig
                if stmt.name == "__init__":
                    info.init = sig
        if info.init is None and info.is_dataclass:
            info.init = FuncSig(info.name, init_params, TObj(info.name), side_effect_free=True, owner=info.name)

    # ---------------------------------------------------------------- scopes
    def lookup(self, name: str) -> Binding | None:
        func = self.func
        for scope in reversed(self.scopes):
            if name in scope.vars:
                return scope.vars[name]
            if scope.kind == "function" and scope.func is not None and name in scope.func.locals:
                if scope.func is func:
                    return None
        return None

    def scope_for_assign(self, name: str) -> tuple[Scope | None, Binding | None]:
        """Find the scope an assignment to ``name`` refers to, if already bound."""
        func = self.func
        if func is not None and name in func.globals:
            return self.module_scope, self.module_scope.vars.get(name)
        if func is not None and name in func.nonlocals:
            seen_self = False
            for scope in reversed(self.scopes):
                if scope.kind == "function" and scope.func is func:
                    seen_self = True
                    continue
                if seen_self and name in scope.vars:
                    return scope, scope.vars[name]
            return None, None
        for scope in reversed(self.scopes):
            if name in scope.vars:
                return scope, scope.vars[name]
            if scope.kind in ("function",):
                break
        return None, None

    @contextmanager
    def raised(self, label: Label | None, node: ast.AST, kind: str | None = None):
        """Run a region at pc ⊔ label in its own lexical scope when the pc changes."""
        outer = self.pc
        inner = self.join(outer, label, node) if label is not None else outer
        if inner is None:
            inner = outer
        block = self.block
        if kind is not None and block is not None:
            block.conditions.append(ConditionSite(node.lineno, kind, str(label), str(outer), str(inner)))
        if inner == outer and (label is None or label == self.bottom):
            yield
            return
        # a labeled condition gets its own scope even when the pc is unchanged:
        # a name bound only on one arm could otherwise be unbound at runtime
        scope = Scope("branch", inner, self.func)
        self.scopes.append(scope)
        self.pc = inner
        if block is not None:
            block.events.append(PcEvent("enter", node.lineno, str(inner)))
        try:
            yield
        finally:
            self.scopes.pop()
            for name, b in scope.vars.items():
                self.dropped[name] = b.line
            self.pc = outer
            if block is not None:
                block.events.append(PcEvent("exit", getattr(node, "end_lineno", node.lineno), str(outer)))

    # -------------------------------------------------------- compatibility
    def compatible(self, src: Ty, dst: Ty, node: ast.AST, what: str) -> bool:
        """Explicit-flow check for moving a value of type ``src`` into ``dst``."""
        shown = what if "`" in what else f"`{what}`"
        if isinstance(src, TErr) or isinstance(dst, TErr):
            return True
        if isinstance(src, (TLabel, TPrim)):
            self.error(node, "unsupported", f"{src} is a compile-time construct and cannot be stored in {shown}")
            return False
        if isinstance(dst, TEmpty):
            return True
        if isinstance(dst, TLabeled):
            if isinstance(src, TLabeled):
                if src.label == dst.label:
                    return True
                if self.leq(src.label, dst.label):
                    self.error(
                        node, "relabel",
                        f"mismatched labels: {shown} is labeled {dst.label} but the value is labeled {src.label}; "
                        f"use relabel(value, {dst.label})",
                        src.label, dst.label,
                    )
                else:
                    self.error(
                        node, "explicit",
                        f"insecure explicit flow: value labeled {src.label} cannot flow into {shown} labeled "
                        f"{dst.label} (FlowsTo<{dst.label}> is not satisfied for {src.label})",
                        src.label, dst.label,
                    )
                return False
            if contains_labels(src):
                self.error(node, "explicit", f"insecure explicit flow: {src} cannot flow into {shown} of type {dst}")
                return False
            self.error(
                node, "relabel",
                f"mismatched labels: {shown} is labeled {dst.label} but the value is unlabeled; "
                f"use relabel(value, {dst.label}) or label_new",
                self.bottom, dst.label,
            )
            return False
        if not contains_labels(dst):
            if contains_labels(src):
                labs = ", ".join(sorted({str(x) for x in labels_in(src)}))
                self.error(
                    node, "explicit",
                    f"insecure explicit flow: value labeled {labs} cannot flow into unlabeled {shown}",
                    labs, self.bottom,
                )
                return False
            return True
        # dst is a plain container holding labeled parts
        if isinstance(dst, (TList, TSet)) and isinstance(src, (TList, TSet)):
            return self.compatible(src.elem, dst.elem, node, f"{what}[...]")
        if isinstance(dst, TDict) and isinstance(src, TDict):
            return self.compatible(src.key, dst.key, node, f"{what}.keys") and self.compatible(
                src.val, dst.val, node, f"{what}[...]"
            )
        if isinstance(dst, TTuple) and isinstance(src, TTuple) and len(src.items) == len(dst.items):
            return all(self.compatible(s, d, node, f"{what}[{i}]") for i, (s, d) in enumerate(zip(src.items, dst.items)))
        if isinstance(dst, TList) and isinstance(src, TTuple):
            return all(self.compatible(s, dst.elem, node, f"{what}[{i}]") for i, s in enumerate(src.items))
        self.error(node, "explicit", f"insecure explicit flow: {src} cannot flow into {shown} of type {dst}")
        return False

    def unify(self, a: Ty, b: Ty, node: ast.AST) -> Ty:
        if a == b:
            return a
        if isinstance(a, TEmpty):
            return b
        if isinstance(b, TEmpty):
            return a
        if isinstance(a, TErr) or isinstance(b, TErr):
            return ERR
        if isinstance(a, TLabeled) and isinstance(b, TLabeled):
            if a.label == b.label:
                return TLabeled(a.label, self.unify(a.payload, b.payload, node))
            self.error(
                node, "relabel",
                f"mismatched labels: elements labeled {a.label} and {b.label} in one container; relabel them to a common label",
                a.label, b.label,
            )
            return ERR
        if contains_labels(a) or contains_labels(b):
            if isinstance(a, TList) and isinstance(b, TList):
                return TList(self.unify(a.elem, b.elem, node), a.frozen and b.frozen)
            if isinstance(a, TSet) and isinstance(b, TSet):
                return TSet(self.unify(a.elem, b.elem, node))
            if isinstance(a, TDict) and isinstance(b, TDict):
                return TDict(self.unify(a.key, b.key, node), self.unify(a.val, b.val, node))
            if isinstance(a, TTuple) and isinstance(b, TTuple) and len(a.items) == len(b.items):
                return TTuple(tuple(self.unify(x, y, node) for x, y in zip(a.items, b.items)))
            self.error(node, "explicit", f"cannot combine {a} and {b}: labeled and unlabeled data mixed")
            return ERR
        if isinstance(a, TScalar) and isinstance(b, TScalar):
            return self.numeric(a, b)
        return ANY

    @staticmethod
    def numeric(a: Ty, b: Ty) -> Ty:
        nums = {"int", "bool", "float"}
        if isinstance(a, TScalar) and isinstance(b, TScalar) and a.name in nums and b.name in nums:
            return FLOAT if "float" in (a.name, b.name) else INT
        if a == b:
            return a
        return ANY

    def plain_value(self, ty: Ty, node: ast.AST, what: str) -> bool:
        """Require a label-free value (e.g. for an untrusted callee)."""
        if isinstance(ty, TErr):
            return False
        if isinstance(ty, (TLabel, TPrim)):
            self.error(node, "unsupported", f"{ty} is a compile-time construct and cannot be used as a value")
            return False
        if contains_labels(ty):
            labs = ", ".join(sorted({str(x) for x in labels_in(ty)}))
            self.error(
                node, "explicit",
                f"insecure explicit flow: value labeled {labs} passed to {what}; "
                "use fcall/mcall to keep the label, or declassify",
                labs, self.bottom,
            )
            return False
        return True

    # -------------------------------------------------------------- statements
    def block_stmts(self, body: list[ast.stmt], top: bool = False) -> None:
        for stmt in body:
            if top and id(stmt) in self.skip:
                continue
            self.stmt(stmt)

    def stmt(self, node: ast.stmt) -> None:
        method = getattr(self, "s_" + type(node).__name__, None)
        if method is None:
            self.error(node, "unsupported", f"`{type(node).__name__}` statements are not supported by the checker")
            return
        method(node)

    def s_Pass(self, node) -> None:
        pass

    def s_Expr(self, node: ast.Expr) -> None:
        if isinstance(node.value, ast.Constant):
            return
        self.expr(node.value)

    def s_Import(self, node) -> None:
        self.do_import(node)

    s_ImportFrom = s_Import

    def s_Global(self, node) -> None:
        if self.func is not None and self.func.sig.side_effect_free:
            self.error(node, "side-effect", f"side-effect-free function `{self.func.sig.name}` declares global state")

    s_Nonlocal = s_Global

    def record_assign(self, node: ast.AST, target: str, label: Label, ok: bool) -> None:
        block = self.block
        if block is not None:
            block.assignments.append(AssignSite(node.lineno, target, str(label), str(self.eff_pc()), ok))

    def s_Assign(self, node: ast.Assign) -> None:
        value = self.expr(node.value)
        fresh = _is_fresh_display(node.value)
        before = len(self.diags)
        for target in node.targets:
            self.assign_target(target, value, node, fresh=fresh)
        self.record_assign(node, ast.unparse(node.targets[0]), self.target_label_of(node.targets[0]), len(self.diags) == before)

    def target_label_of(self, target: ast.expr) -> Label:
        if isinstance(target, ast.Name):
            found = self.lookup(target.id)
            if found is not None and isinstance(found.ty, TLabeled):
                return found.ty.label
        return self.bottom

    def s_AnnAssign(self, node: ast.AnnAssign) -> None:
        declared = self.ann(node.annotation)
        before = len(self.diags)
        if not isinstance(node.target, ast.Name):
            if node.value is not None:
                self.assign_target(node.target, self.expr(node.value), node)
            return
        name = node.target.id
        scope, binding = self.scope_for_assign(name)
        if node.value is None:
            if binding is None:
                self.bind_fresh(name, declared, node)
            return
        value = self.expr(node.value)
        if binding is None:
            self.compatible(value, declared, node, name)
            self.bind_fresh(name, declared, node, fresh=_is_fresh_display(node.value))
        else:
            if declared != binding.ty and not isinstance(binding.ty, TErr):
                self.error(node, "relabel", f"`{name}` was declared as {binding.ty}, not {declared}")
            self.secure_assign_with_pc(name, binding, value, node)
        label = declared.label if isinstance(declared, TLabeled) else self.bottom
        self.record_assign(node, name, label, len(self.diags) == before)

    def s_AugAssign(self, node: ast.AugAssign) -> None:
        current = self.expr(node.target)
        rhs = self.expr(node.value)
        result = self.binop_types(current, rhs, node.op, node)
        before = len(self.diags)
        self.assign_target(node.target, result, node)
        self.record_assign(node, ast.unparse(node.target), self.target_label_of(node.target), len(self.diags) == before)

    def secure_assign_with_pc(self, name: str, binding: Binding, value: Ty, node: ast.AST) -> bool:
        """Assignment to an existing binding: exact label match, then pc ⊑ target."""
        explicit_ok = self.compatible(value, binding.ty, node, name)
        target = binding.ty.label if isinstance(binding.ty, TLabeled) else self.bottom
        pc = self.eff_pc()
        if not self.leq(pc, target):
            self.error(
                node, "implicit",
                f"implicit flow: pc label {pc} does not satisfy FlowsTo<{target}> for assignment to `{name}`",
                pc, target,
            )
            return False
        if explicit_ok and _has_empty(binding.ty) and not isinstance(value, TErr):
            binding.ty = value
        return explicit_ok

    def assign_name(self, name: str, value: Ty, node: ast.AST, fresh: bool = False) -> None:
        scope, binding = self.scope_for_assign(name)
        if binding is None:
            if isinstance(value, (TLabel, TPrim)):
                self.error(node, "unsupported", f"{value} is a compile-time construct and cannot be stored in `{name}`")
                value = ERR
            if scope is self.module_scope and self.func is not None:
                if self.eff_pc() != self.bottom:
                    self.error(node, "implicit", f"implicit flow: pc label {self.eff_pc()} does not satisfy FlowsTo<{self.bottom}> for assignment to global `{name}`")
                self.module_scope.vars[name] = Binding(value, node.lineno)
                return
            if self.func is not None and self.func.sig.side_effect_free and name in self.func.nonlocals:
                self.error(node, "side-effect", f"side-effect-free function `{self.func.sig.name}` writes non-local `{name}`")
            self.bind_fresh(name, value, node, fresh)
            return
        if self.func is not None and self.func.sig.side_effect_free and scope is not None and scope.func is not self.func:
            self.error(node, "side-effect", f"side-effect-free function `{self.func.sig.name}` writes non-local `{name}`")
            return
        self.secure_assign_with_pc(name, binding, value, node)
        binding.fresh = fresh and binding.fresh

    def assign_target(self, target: ast.expr, value: Ty, node: ast.AST, fresh: bool = False) -> None:
        if isinstance(target, ast.Name):
            self.assign_name(target.id, value, node, fresh)
        elif isinstance(target, (ast.Tuple, ast.List)):
            items = self.destructure(value, len(target.elts), node)
            for elt, ty in zip(target.elts, items):
                self.assign_target(elt, ty, node)
        elif isinstance(target, ast.Subscript):
            self.assign_subscript(target, value, node)
        elif isinstance(target, ast.Attribute):
            self.assign_attribute(target, value, node)
        else:
            self.error(node, "unsupported", f"unsupported assignment target `{ast.unparse(target)}`")

    def destructure(self, value: Ty, n: int, node: ast.AST) -> list[Ty]:
        if isinstance(value, TTuple):
            if len(value.items) != n:
                self.error(node, "unsupported", f"cannot unpack {len(value.items)} values into {n} targets")
                return [ERR] * n
            return list(value.items)
        if isinstance(value, TLabeled):
            self.error(node, "opacity", f"labeled value is opaque: cannot unpack {value}; use mcall(...) to project it")
            return [ERR] * n
        if isinstance(value, (TList, TSet)):
            return [value.elem] * n
        if isinstance(value, TErr):
            return [ERR] * n
        return [ANY] * n

    def check_local_write(self, target: ast.expr, node: ast.AST) -> None:
        """Inside side-effect-free functions only freshly built locals may be mutated."""
        func = self.func
        if func is None or not func.sig.side_effect_free:
            return
        root = _root_name(target)
        if root == "self" and func.fresh_self:
            return
        binding = None
        if root is not None:
            for scope in reversed(self.scopes):
                if root in scope.vars:
                    if scope.func is func:
                        binding = scope.vars[root]
                    break
        if binding is None or not binding.fresh:
            self.error(
                node, "side-effect",
                f"side-effect-free function `{func.sig.name}` mutates `{ast.unparse(target)}`, which is not a fresh local",
            )

    def assign_subscript(self, target: ast.Subscript, value: Ty, node: ast.AST) -> None:
        base = self.expr(target.value)
        idx = self.expr(target.slice)
        self.plain_value(idx, target.slice, "an index")
        self.check_local_write(target, node)
        pc = self.eff_pc()
        what = ast.unparse(target)
        if isinstance(base, TLabeled):
            elem = self.index_payload(base.payload, target.slice)
            self.compatible(value, TLabeled(base.label, elem), node, what)
            slot = base.label
        elif isinstance(base, (TList, TDict)):
            slot_ty = base.elem if isinstance(base, TList) else base.val
            if isinstance(slot_ty, TEmpty):
                if not isinstance(value, TErr):
                    self.refine(target.value, base, value, idx)
                slot_ty = value
            self.compatible(value, slot_ty, node, what)
            if isinstance(base, TList):
                slot = slot_ty.label if isinstance(slot_ty, TLabeled) else self.bottom
            else:
                slot = self.bottom  # inserting a key changes the dict's shape
        else:
            if isinstance(base, TErr):
                return
            self.plain_value(value, node, f"unlabeled container `{ast.unparse(target.value)}`")
            slot = self.bottom
        if not self.leq(pc, slot):
            self.error(
                node, "implicit",
                f"implicit flow: pc label {pc} does not satisfy FlowsTo<{slot}> for assignment to `{what}`",
                pc, slot,
            )

    def refine(self, container: ast.expr, old: Ty, element: Ty, key: Ty | None = None) -> None:
        """An empty display gets its element type from the first write."""
        if not isinstance(container, ast.Name):
            return
        found = self.lookup(container.id)
        if found is None or found.ty != old:
            return
        if isinstance(old, TList):
            found.ty = TList(element, old.frozen)
        elif isinstance(old, TSet):
            found.ty = TSet(element)
        elif isinstance(old, TDict):
            new_key = key if isinstance(old.key, TEmpty) and key is not None else old.key
            found.ty = TDict(new_key, element)

    def assign_attribute(self, target: ast.Attribute, value: Ty, node: ast.AST) -> None:
        base = self.expr(target.value)
        what = ast.unparse(target)
        if isinstance(base, TLabeled):
            self.error(node, "opacity", f"labeled value is opaque: cannot assign `.{target.attr}` of {base}; use mcall(...)")
            return
        self.check_local_write(target, node)
        slot_ty: Ty = ANY
        if isinstance(base, TObj) and base.cls in self.classes:
            slot_ty = self.classes[base.cls].fields.get(target.attr, ANY)
        if isinstance(base, TErr):
            return
        if contains_labels(slot_ty):
            self.compatible(value, slot_ty, node, what)
        else:
            self.plain_value(value, node, f"unlabeled attribute `{what}`")
        slot = slot_ty.label if isinstance(slot_ty, TLabeled) else self.bottom
        pc = self.eff_pc()
        if not self.leq(pc, slot):
            self.error(
                node, "implicit",
                f"implicit flow: pc label {pc} does not satisfy FlowsTo<{slot}> for assignment to `{what}`",
                pc, slot,
            )

    def inspect_condition(self, node: ast.expr, what: str) -> Label | None:
        """Label of a branch/loop condition; labeled conditions need a pc_block."""
        ty = self.expr(node)
        if isinstance(ty, TErr):
            return None
        if isinstance(ty, TLabeled):
            if self.pc_depth == 0:
                self.error(
                    node, "implicit",
                    f"implicit flow: {what} condition labeled {ty.label} outside a pc_block; "
                    f"wrap the branch in `with pc_block(...)`",
                    ty.label, self.eff_pc(),
                )
                return None
            return ty.label
        if contains_labels(ty):
            self.error(node, "implicit", f"implicit flow: {what} condition depends on labeled data ({ty})")
            return None
        return self.bottom

    def s_If(self, node: ast.If) -> None:
        label = self.inspect_condition(node.test, "branch")
        with self.raised(label, node, "if"):
            self.block_stmts(node.body)
            self.block_stmts(node.orelse)

    def s_While(self, node: ast.While) -> None:
        label = self.inspect_condition(node.test, "loop")
        with self.raised(label, node, "while"):
            self.loops.append(self.eff_pc())
            self.block_stmts(node.body)
            self.loops.pop()
            self.block_stmts(node.orelse)

    def s_For(self, node: ast.For) -> None:
        it = self.expr(node.iter)
        label: Label | None = self.bottom
        if isinstance(it, TLabeled):
            if self.pc_depth == 0:
                self.error(
                    node.iter, "implicit",
                    f"implicit flow: loop over a value labeled {it.label} outside a pc_block; "
                    "wrap the loop in `with pc_block(...)`",
                    it.label, self.eff_pc(),
                )
                label, elem = None, ERR
            else:
                label = it.label
                inner = element_type(it.payload)
                elem = TLabeled(it.label, strip_labels(inner) if inner is not None else ANY)
        elif isinstance(it, TErr):
            elem = ERR
        else:
            inner = element_type(it)
            if inner is None:
                self.error(node.iter, "unsupported", f"cannot iterate over {it}")
                inner = ERR
            elem = inner
        with self.raised(label, node, "for"):
            self.assign_target(node.target, elem, node)
            self.loops.append(self.eff_pc())
            self.block_stmts(node.body)
            self.loops.pop()
            self.block_stmts(node.orelse)

    def loop_exit(self, node: ast.stmt, word: str) -> None:
        if not self.loops:
            return
        if self.eff_pc() != self.loops[-1]:
            self.error(
                node, "control",
                f"`{word}` under pc label {self.eff_pc()} leaves a region raised above its loop (pc {self.loops[-1]}); "
                "early exits out of a raised pc are an implicit flow",
                self.eff_pc(), self.loops[-1],
            )

    def s_Break(self, node) -> None:
        self.loop_exit(node, "break")

    def s_Continue(self, node) -> None:
        self.loop_exit(node, "continue")

    def s_Return(self, node: ast.Return) -> None:
        if self.func is None:
            self.error(node, "unsupported", "return outside a function")
            return
        value = self.expr(node.value) if node.value is not None else NONE
        returns = self.func.sig.returns
        self.compatible(value, returns, node, f"the return value of `{self.func.sig.name}`")
        pc = self.eff_pc()
        if pc != self.bottom:
            result = returns.label if isinstance(returns, TLabeled) else self.bottom
            if not self.leq(pc, result):
                self.error(
                    node, "control",
                    f"early return under pc label {pc} is an implicit flow to the caller: "
                    f"pc label {pc} does not satisfy FlowsTo<{result}> for the declared result",
                    pc, result,
                )
            else:
                self.func.exit_taint = self.join(self.func.exit_taint, pc) or pc

    def s_Raise(self, node: ast.Raise) -> None:
        if self.eff_pc() != self.bottom:
            self.error(node, "control", f"raise under pc label {self.eff_pc()} is an implicit flow", self.eff_pc())
        if node.exc is not None:
            self.plain_value(self.expr(node.exc), node, "an exception")

    def s_Try(self, node: ast.Try) -> None:
        if self.eff_pc() != self.bottom or self.pc_depth:
            self.error(node, "unsupported", "try statements are only supported at a Public pc outside pc_block")
        self.block_stmts(node.body)
        for handler in node.handlers:
            if handler.type is not None:
                self.expr(handler.type)
            if handler.name:
                self.bind_fresh(handler.name, ANY, handler)
            self.block_stmts(handler.body)
        self.block_stmts(node.orelse)
        self.block_stmts(node.finalbody)

    def s_Assert(self, node: ast.Assert) -> None:
        ty = self.expr(node.test)
        if contains_labels(ty):
            self.error(node, "implicit", "implicit flow: assertions on labeled data can abort depending on secrets")
        if node.msg is not None:
            self.plain_value(self.expr(node.msg), node, "an assertion message")
        if self.eff_pc() != self.bottom:
            self.error(node, "control", f"assert under pc label {self.eff_pc()} is an implicit flow")

    def s_Delete(self, node: ast.Delete) -> None:
        for target in node.targets:
            if isinstance(target, ast.Name):
                if self.eff_pc() != self.bottom:
                    self.error(node, "implicit", f"implicit flow: deleting `{target.id}` under pc label {self.eff_pc()}")
            elif isinstance(target, ast.Subscript):
                base = self.expr(target.value)
                self.plain_value(self.expr(target.slice), target, "an index")
                self.check_local_write(target, node)
                if isinstance(base, TLabeled):
                    self.error(node, "opacity", "labeled value is opaque: cannot delete items; use mcall(...)")
                elif self.eff_pc() != self.bottom:
                    self.error(node, "implicit", f"implicit flow: pc label {self.eff_pc()} does not satisfy FlowsTo<{self.bottom}> for deletion")
            else:
                self.error(node, "unsupported", "unsupported delete target")

    def s_With(self, node: ast.With) -> None:
        first = node.items[0].context_expr
        if isinstance(first, ast.Call) and isinstance(self.lookup_quiet(first.func), TPrim) \
                and self.lookup_quiet(first.func).name == "pc_block":
            self.pc_block(node, first)
            return
        for item in node.items:
            ty = self.expr(item.context_expr)
            self.plain_value(ty, item.context_expr, "a context manager")
            if item.optional_vars is not None:
                self.assign_target(item.optional_vars, ANY, node)
        self.block_stmts(node.body)

    def pc_block(self, node: ast.With, call: ast.Call) -> None:
        if len(node.items) != 1 or node.items[0].optional_vars is not None or len(call.args) != 1 or call.keywords:
            self.error(node, "unsupported", "use `with pc_block(LABEL):` with exactly one label")
            return
        label = self.label_arg(call.args[0])
        if label is None:
            return
        outer = self.eff_pc()
        if not self.leq(outer, label):
            self.error(
                node, "implicit",
                f"implicit flow: enclosing pc label {outer} does not satisfy FlowsTo<{label}> for pc_block({label})",
                outer, label,
            )
            return
        self.pc_blocks.add(id(node))
        plan = BlockRewritePlan(str(label), node.lineno, node.end_lineno or node.lineno)
        self.plans.append(plan)
        saved_pc = self.pc
        self.blocks.append(plan)
        self.pc_depth += 1
        scope = None
        if label != saved_pc:
            scope = Scope("branch", label, self.func)
            self.scopes.append(scope)
        self.pc = label
        plan.events.append(PcEvent("enter", node.lineno, str(label)))
        try:
            self.block_stmts(node.body)
        finally:
            if scope is not None:
                self.scopes.pop()
                for name, b in scope.vars.items():
                    self.dropped[name] = b.line
            self.pc = saved_pc
            self.pc_depth -= 1
            self.blocks.pop()
            plan.events.append(PcEvent("exit", node.end_lineno or node.lineno, str(saved_pc)))

    def s_FunctionDef(self, node: ast.FunctionDef) -> None:
        if self.pc_depth or self.eff_pc() != self.bottom:
            self.error(node, "unsupported", "functions cannot be defined inside a pc_block or under a raised pc")
        sig = self.make_sig(node)
        for d in node.decorator_list:
            if id(d) not in self.drop_nodes:
                self.expr(d)
        if self.func is None:
            self.bind_fresh(node.name, TFunc(sig), node)
            self.deferred.append((node, sig, None))
            return
        self.bind_fresh(node.name, TFunc(sig), node)
        self.check_function(node, sig, None)

    def s_ClassDef(self, node: ast.ClassDef) -> None:
        info = self.classes.get(node.name)
        if info is None or self.func is not None:
            self.error(node, "unsupported", "classes must be defined at module level")
            return
        for stmt in node.body:
            if isinstance(stmt, ast.AnnAssign) and stmt.value is not None:
                self.compatible(self.expr(stmt.value), info.fields[stmt.target.id], stmt, f"{node.name}.{stmt.target.id}")
            elif isinstance(stmt, ast.Assign):
                self.plain_value(self.expr(stmt.value), stmt, "a class attribute")
            elif isinstance(stmt, ast.FunctionDef):
                self.deferred.append((stmt, info.methods[stmt.name], info))
            elif isinstance(stmt, (ast.Expr, ast.Pass, ast.AnnAssign)):
                continue
            else:
                self.error(stmt, "unsupported", "unsupported statement in class body")

    def check_function(self, fdef: ast.FunctionDef, sig: FuncSig, cls: ClassInfo | None) -> None:
        locs, glob, nonloc = _assigned_names(fdef.body)
        params = [a.arg for a in fdef.args.posonlyargs + fdef.args.args + fdef.args.kwonlyargs]
        for extra in (fdef.args.vararg, fdef.args.kwarg):
            if extra is not None:
                params.append(extra.arg)
        ctx = FuncCtx(sig, locs | set(params), glob, nonloc, self.bottom, fresh_self=fdef.name == "__init__")
        saved = (self.scopes, self.func, self.pc, self.pc_depth, self.blocks, self.loops)
        # defaults are evaluated in the defining scope
        positional = fdef.args.posonlyargs + fdef.args.args
        for a, d in zip(positional[len(positional) - len(fdef.args.defaults):], fdef.args.defaults):
            self.compatible(self.expr(d), self.ann(a.annotation), d, a.arg)
        scope = Scope("function", self.bottom, ctx)
        self.scopes = list(self.scopes) + [scope]
        self.func, self.pc, self.pc_depth, self.blocks, self.loops = ctx, self.bottom, 0, [], []
        if cls is not None and sig.is_method:
            scope.vars[positional[0].arg] = Binding(TObj(cls.name), fdef.lineno)
        for p in sig.params:
            scope.vars[p.name] = Binding(p.ty, fdef.lineno)
        if fdef.args.vararg is not None:
            scope.vars[fdef.args.vararg.arg] = Binding(TList(ANY, frozen=True), fdef.lineno)
        if fdef.args.kwarg is not None:
            scope.vars[fdef.args.kwarg.arg] = Binding(TDict(STR, ANY), fdef.lineno)
        try:
            self.block_stmts(fdef.body)
        finally:
            self.scopes, self.func, self.pc, self.pc_depth, self.blocks, self.loops = saved

    def s_Match(self, node) -> None:
        self.error(node, "unsupported", "match statements are not supported; use if/elif")

    # ------------------------------------------------------------ expressions
    def expr(self, node: ast.expr) -> Ty:
        method = getattr(self, "e_" + type(node).__name__, None)
        if method is None:
            self.error(node, "unsupported", f"`{type(node).__name__}` expressions are not supported by the checker")
            return ERR
        return method(node)

    def e_Constant(self, node: ast.Constant) -> Ty:
        v = node.value
        if v is None:
            return NONE
        if isinstance(v, bool):
            return BOOL
        for name, ty in SCALARS.items():
            if type(v).__name__ == name:
                return ty
        return ANY

    def e_Name(self, node: ast.Name) -> Ty:
        found = self.lookup(node.id)
        if found is not None:
            ty = found.ty
            if isinstance(ty, TTypeVarAlias):
                return TTypeVar(node.id)
            return ty
        if node.id == "Public":
            return TLabel(self.bottom)
        if node.id in self.lat.levels and node.id not in _BUILTIN_NAMES:
            return TLabel(node.id)
        if node.id in ("__name__", "__file__"):
            return STR
        func = self.func
        if func is not None and node.id in func.locals and node.id not in _BUILTIN_NAMES:
            if node.id in self.dropped:
                return self.dropped_error(node)
            self.error(node, "scope", f"local `{node.id}` is used before it is bound")
            return ERR
        if node.id in _BUILTIN_NAMES:
            return TBuiltin(node.id)
        if node.id in self.dropped:
            return self.dropped_error(node)
        self.error(node, "scope", f"name `{node.id}` is not defined")
        return ERR

    def dropped_error(self, node: ast.Name) -> Ty:
        self.error(
            node, "scope",
            f"`{node.id}` was first bound at line {self.dropped[node.id]} inside a raised-pc region and is not visible here; "
            "bind it before the region",
        )
        return ERR

    def e_Attribute(self, node: ast.Attribute) -> Ty:
        base = self.expr(node.value)
        return self.attribute(base, node)

    def attribute(self, base: Ty, node: ast.Attribute) -> Ty:
        attr = node.attr
        if isinstance(base, TLabeled):
            self.error(
                node, "opacity",
                f"labeled value is opaque: cannot access `.{attr}` on {base}; use mcall(...) or declassify(...)",
                base.label,
            )
            return ERR
        if isinstance(base, TModule):
            if base.name == LIB or base.name.startswith(LIB + "."):
                return self.lib_name(base.name, attr, node)
            return TBuiltin(f"{base.name}.{attr}")
        if isinstance(base, TObj) and base.cls in self.classes:
            info = self.classes[base.cls]
            if attr in info.fields:
                return info.fields[attr]
            if attr in info.methods:
                return TFunc(info.methods[attr])
            return ANY
        if isinstance(base, TErr):
            return ERR
        if contains_labels(base):
            return TBuiltin(f"<method {attr}>")
        return ANY

    def index_payload(self, payload: Ty, index: ast.expr) -> Ty:
        if isinstance(index, ast.Slice):
            return payload
        if isinstance(payload, TList):
            return payload.elem
        if isinstance(payload, TDict):
            return payload.val
        if isinstance(payload, TTuple):
            if isinstance(index, ast.Constant) and isinstance(index.value, int) and -len(payload.items) <= index.value < len(payload.items):
                return payload.items[index.value]
            return self.unify_quiet(payload.items)
        if isinstance(payload, TScalar) and payload.name in ("str", "bytes"):
            return payload
        return ANY

    def unify_quiet(self, items) -> Ty:
        out: Ty = EMPTY
        for t in items:
            if out == EMPTY or out == t:
                out = t
            elif contains_labels(out) or contains_labels(t):
                return ERR
            else:
                out = ANY
        return ANY if out == EMPTY else out

    def e_Subscript(self, node: ast.Subscript) -> Ty:
        base = self.expr(node.value)
        if isinstance(base, (TPrim, TTypeVar)) or (isinstance(base, TBuiltin) and base.name in _CONTAINER_ANN):
            return TTypeVar(ast.unparse(node))
        idx = self.expr(node.slice)
        if isinstance(base, TErr):
            return ERR
        if not self.plain_value(idx, node.slice, "an index (indices must be unlabeled)"):
            return ERR
        if isinstance(base, TLabeled):
            return TLabeled(base.label, self.index_payload(base.payload, node.slice))
        return self.index_payload(base, node.slice)

    def e_Slice(self, node: ast.Slice) -> Ty:
        for part in (node.lower, node.upper, node.step):
            if part is not None and not self.plain_value(self.expr(part), part, "a slice bound"):
                return ERR
        return ANY

    def e_BinOp(self, node: ast.BinOp) -> Ty:
        return self.binop_types(self.expr(node.left), self.expr(node.right), node.op, node)

    def binop_types(self, left: Ty, right: Ty, op: ast.operator, node: ast.AST) -> Ty:
        if isinstance(left, TErr) or isinstance(right, TErr):
            return ERR
        lab_l, lab_r = isinstance(left, TLabeled), isinstance(right, TLabeled)
        if lab_l and lab_r:
            label = self.join(left.label, right.label, node)
            if label is None:
                return ERR
            return TLabeled(label, self.plain_binop(left.payload, right.payload, op))
        if lab_l or lab_r:
            labeled, plain = (left, right) if lab_l else (right, left)
            if contains_labels(plain):
                self.error(node, "explicit", f"cannot combine {left} and {right}")
                return ERR
            self.error(
                node, "relabel",
                f"mismatched operands: {left} and {right}; wrap the unlabeled operand with lift_public(...) "
                f"or relabel it to {labeled.label}",
                self.bottom, labeled.label,
            )
            return ERR
        if contains_labels(left) or contains_labels(right):
            if isinstance(op, ast.Add) and isinstance(left, TList) and isinstance(right, TList):
                return TList(self.unify(left.elem, right.elem, node), left.frozen)
            if isinstance(op, ast.Mult) and isinstance(left, TList) and not contains_labels(right):
                return left
            self.error(node, "unsupported", f"operator on containers of labeled values ({left}, {right}) is not lifted")
            return ERR
        return self.plain_binop(left, right, op)

    def plain_binop(self, left: Ty, right: Ty, op: ast.operator) -> Ty:
        if isinstance(left, TList) and isinstance(right, TList):
            return TList(left.elem if left.elem == right.elem else ANY, left.frozen)
        if isinstance(left, TList) and isinstance(op, ast.Mult):
            return left
        if isinstance(op, ast.Div):
            return FLOAT
        if left == STR and right == STR:
            return STR
        if isinstance(op, ast.Mod) and left == STR:
            return STR
        return self.numeric(left, right)

    def e_UnaryOp(self, node: ast.UnaryOp) -> Ty:
        operand = self.expr(node.operand)
        payload = operand.payload if isinstance(operand, TLabeled) else operand
        if isinstance(node.op, ast.Not):
            result = BOOL
        elif isinstance(payload, TScalar):
            result = INT if payload == BOOL else payload
        else:
            result = ANY
        if isinstance(operand, TLabeled):
            return TLabeled(operand.label, result)
        if contains_labels(operand):
            self.error(node, "unsupported", f"operator on {operand} is not lifted")
            return ERR
        return result if not isinstance(operand, TErr) else ERR

    def e_BoolOp(self, node: ast.BoolOp) -> Ty:
        types: list[Ty] = []
        raised: Label = self.bottom
        for i, value in enumerate(node.values):
            if i == 0:
                ty = self.expr(value)
            else:
                # later operands only run depending on the earlier ones
                with self.raised(raised, value):
                    ty = self.expr(value)
            types.append(ty)
            if isinstance(ty, TLabeled):
                raised = self.join(raised, ty.label, value) or raised
        return self.combine(types, node, BOOL if all(self.payload(t) == BOOL for t in types) else ANY)

    def payload(self, ty: Ty) -> Ty:
        return ty.payload if isinstance(ty, TLabeled) else ty

    def combine(self, types: list[Ty], node: ast.AST, payload: Ty) -> Ty:
        """Result of an operator over operands: all labeled -> join, all plain -> plain."""
        if any(isinstance(t, TErr) for t in types):
            return ERR
        labeled = [t for t in types if isinstance(t, TLabeled)]
        if not labeled:
            for t in types:
                if contains_labels(t):
                    self.error(node, "unsupported", f"operator on {t} is not lifted; compare labeled elements individually")
                    return ERR
            return payload
        if len(labeled) != len(types):
            plain = next(t for t in types if not isinstance(t, TLabeled))
            self.error(
                node, "relabel",
                f"mismatched operands: {labeled[0]} and {plain}; wrap the unlabeled operand with lift_public(...)",
                self.bottom, labeled[0].label,
            )
            return ERR
        label = self.join_all([t.label for t in labeled], node)
        if label is None:
            return ERR
        return TLabeled(label, payload)

    def e_Compare(self, node: ast.Compare) -> Ty:
        operands = [self.expr(node.left)] + [self.expr(c) for c in node.comparators]
        if any(isinstance(t, TErr) for t in operands):
            return ERR
        types: list[Ty] = []
        for i, op in enumerate(node.ops):
            left, right = operands[i], operands[i + 1]
            if isinstance(op, (ast.In, ast.NotIn)) and not isinstance(right, TLabeled):
                if isinstance(right, TDict):
                    part = right.key
                elif isinstance(right, (TList, TSet)):
                    part = right.elem
                elif isinstance(right, TTuple):
                    part = self.unify_quiet(right.items)
                else:
                    part = ANY if not contains_labels(right) else ERR
                types.extend([left, part])
            else:
                types.extend([left, right])
        types = [t for t in types if not isinstance(t, TEmpty)]
        if any(isinstance(t, TErr) for t in types):
            self.error(node, "unsupported", "membership test over mixed labeled data")
            return ERR
        return self.combine(types, node, BOOL)

    def e_IfExp(self, node: ast.IfExp) -> Ty:
        test = self.expr(node.test)
        if isinstance(test, TErr):
            return ERR
        label = test.label if isinstance(test, TLabeled) else self.bottom
        if not isinstance(test, TLabeled) and contains_labels(test):
            self.error(node.test, "implicit", f"implicit flow: conditional expression on {test}")
            return ERR
        with self.raised(label, node):
            body = self.expr(node.body)
            orelse = self.expr(node.orelse)
        if isinstance(body, TErr) or isinstance(orelse, TErr):
            return ERR
        if label == self.bottom:
            return self.unify(body, orelse, node)
        if not (isinstance(body, TLabeled) and isinstance(orelse, TLabeled)):
            self.error(
                node, "implicit",
                f"implicit flow: conditional expression on a value labeled {label} must produce labeled results",
                label, self.bottom,
            )
            return ERR
        out = self.join_all([label, body.label, orelse.label], node)
        if out is None:
            return ERR
        return TLabeled(out, self.unify(body.payload, orelse.payload, node) if body.payload != orelse.payload else body.payload)

    def e_List(self, node: ast.List) -> Ty:
        return TList(self.elements(node.elts, node))

    def e_Set(self, node: ast.Set) -> Ty:
        return TSet(self.elements(node.elts, node))

    def e_Tuple(self, node: ast.Tuple) -> Ty:
        if any(isinstance(e, ast.Starred) for e in node.elts):
            return TList(self.elements(node.elts, node), frozen=True)
        return TTuple(tuple(self.expr(e) for e in node.elts))

    def elements(self, elts: list[ast.expr], node: ast.AST) -> Ty:
        out: Ty = EMPTY
        for e in elts:
            if isinstance(e, ast.Starred):
                inner = self.expr(e.value)
                ty = element_type(inner) if not isinstance(inner, TLabeled) else None
                if ty is None:
                    self.error(e, "unsupported", f"cannot unpack {inner} into a display")
                    ty = ERR
            else:
                ty = self.expr(e)
            if isinstance(ty, (TLabel, TPrim)):
                self.error(e, "unsupported", f"{ty} is a compile-time construct and cannot be stored")
                ty = ERR
            out = self.unify(out, ty, e)
        return out

    def e_Dict(self, node: ast.Dict) -> Ty:
        key: Ty = EMPTY
        val: Ty = EMPTY
        for k, v in zip(node.keys, node.values):
            if k is None:
                self.error(node, "unsupported", "dict unpacking is not supported")
                return ERR
            kt = self.expr(k)
            if contains_labels(kt):
                self.error(k, "unsupported", "dict keys must be unlabeled")
                return ERR
            key = self.unify(key, kt, k)
            val = self.unify(val, self.expr(v), v)
        return TDict(key, val)

    def e_JoinedStr(self, node: ast.JoinedStr) -> Ty:
        for part in node.values:
            if isinstance(part, ast.FormattedValue):
                self.plain_value(self.expr(part.value), part.value, "string formatting (declassify it first)")
                if part.format_spec is not None:
                    self.expr(part.format_spec)
        return STR

    def e_FormattedValue(self, node: ast.FormattedValue) -> Ty:
        self.plain_value(self.expr(node.value), node.value, "string formatting")
        return STR

    def comprehension(self, node, elt_fn) -> Ty:
        scope = Scope("comp", self.pc, self.func)
        self.scopes.append(scope)
        try:
            for gen in node.generators:
                it = self.expr(gen.iter)
                if isinstance(it, TLabeled):
                    self.error(
                        gen.iter, "implicit",
                        f"implicit flow: comprehension over a value labeled {it.label}; use mcall(...) or a pc_block loop",
                        it.label,
                    )
                    elem = ERR
                else:
                    elem = element_type(it) if not isinstance(it, TErr) else ERR
                    if elem is None:
                        self.error(gen.iter, "unsupported", f"cannot iterate over {it}")
                        elem = ERR
                self.bind_target(gen.target, elem, node)
                for cond in gen.ifs:
                    ct = self.expr(cond)
                    if contains_labels(ct):
                        self.error(
                            cond, "implicit",
                            f"implicit flow: comprehension filter depends on labeled data ({ct})",
                        )
            return elt_fn()
        finally:
            self.scopes.pop()

    def bind_target(self, target: ast.expr, ty: Ty, node: ast.AST) -> None:
        if isinstance(target, ast.Name):
            self.scopes[-1].vars[target.id] = Binding(ty, node.lineno)
        elif isinstance(target, (ast.Tuple, ast.List)):
            for elt, t in zip(target.elts, self.destructure(ty, len(target.elts), node)):
                self.bind_target(elt, t, node)
        else:
            self.error(node, "unsupported", "unsupported comprehension target")

    def e_ListComp(self, node: ast.ListComp) -> Ty:
        return self.comprehension(node, lambda: TList(self.value_of(node.elt)))

    def e_GeneratorExp(self, node: ast.GeneratorExp) -> Ty:
        return self.comprehension(node, lambda: TList(self.value_of(node.elt), frozen=True))

    def e_SetComp(self, node: ast.SetComp) -> Ty:
        return self.comprehension(node, lambda: TSet(self.value_of(node.elt)))

    def e_DictComp(self, node: ast.DictComp) -> Ty:
        def build():
            k = self.expr(node.key)
            if contains_labels(k):
                self.error(node.key, "unsupported", "dict keys must be unlabeled")
            return TDict(k, self.value_of(node.value))

        return self.comprehension(node, build)

    def value_of(self, node: ast.expr) -> Ty:
        ty = self.expr(node)
        if isinstance(ty, (TLabel, TPrim)):
            self.error(node, "unsupported", f"{ty} is a compile-time construct and cannot be stored")
            return ERR
        return ty

    def e_Lambda(self, node: ast.Lambda) -> Ty:
        scope = Scope("comp", self.pc, self.func)
        for a in node.args.posonlyargs + node.args.args + node.args.kwonlyargs:
            scope.vars[a.arg] = Binding(ANY, node.lineno)
        for d in node.args.defaults:
            self.expr(d)
        self.scopes.append(scope)
        try:
            body = self.expr(node.body)
        finally:
            self.scopes.pop()
        if contains_labels(body):
            self.error(node, "explicit", f"insecure explicit flow: lambda returns a labeled value ({body}) to unlabeled code")
        return TLambda()

    def e_Starred(self, node: ast.Starred) -> Ty:
        self.error(node, "unsupported", "starred expressions are only supported in displays")
        return ERR

    def e_NamedExpr(self, node) -> Ty:
        self.error(node, "unsupported", "assignment expressions (:=) are not supported")
        return ERR

    # ------------------------------------------------------------------ calls
    def e_Call(self, node: ast.Call) -> Ty:
        func = node.func
        if isinstance(func, ast.Subscript):
            head = self.lookup_quiet(func.value)
            if isinstance(head, TPrim) and head.name == "Labeled":
                return self.labeled_ctor(node)
        if isinstance(func, ast.Attribute):
            recv = self.expr(func.value)
            if isinstance(recv, TModule):
                callee = self.attribute(recv, func)
                return self.call_value(node, callee, ast.unparse(func))
            return self.method_call(node, recv, func.attr)
        callee = self.expr(func)
        return self.call_value(node, callee, ast.unparse(func))

    def call_value(self, node: ast.Call, callee: Ty, name: str) -> Ty:
        if isinstance(callee, TErr):
            self.args_plain(node, name, quiet=True)
            return ERR
        if isinstance(callee, TPrim):
            return self.primitive(node, callee.name)
        if isinstance(callee, TFunc):
            return self.user_call(node, callee.sig)
        if isinstance(callee, TClass):
            return self.construct(node, callee.info)
        if isinstance(callee, TLabeled):
            self.error(node, "opacity", f"labeled value is opaque: cannot call {callee}; use fcall/mcall")
            return ERR
        if isinstance(callee, TBuiltin):
            return self.builtin_call(node, callee.name)
        self.vet(node, name, False)
        self.args_plain(node, f"`{name}`")
        return ANY

    def vet(self, node: ast.AST, name: str, ok: bool) -> bool:
        """Side-effect vetting of a callee under a pc_block or raised pc."""
        if not self.vetting():
            return True
        block = self.block
        if block is not None:
            block.calls.append(CallSite(node.lineno, name, ok))
        if not ok:
            where = "inside a side-effect-free function" if self.pc_depth == 0 and self.eff_pc() == self.bottom else (
                f"under pc label {self.eff_pc()}"
            )
            self.error(
                node, "side-effect",
                f"call to `{name}` {where} is not vetted: mark it @side_effect_free_attr, use an allowlisted "
                "function, or wrap it in unchecked_operation(...)",
            )
        return ok

    def arg_types(self, node: ast.Call) -> tuple[list[tuple[ast.expr, Ty]], list[tuple[str | None, ast.expr, Ty]]]:
        pos = []
        for a in node.args:
            if isinstance(a, ast.Starred):
                inner = self.expr(a.value)
                pos.append((a, TStarred(inner)))
            else:
                pos.append((a, self.expr(a)))
        kws = [(k.arg, k.value, self.expr(k.value)) for k in node.keywords]
        return pos, kws

    def args_plain(self, node: ast.Call, what: str, quiet: bool = False) -> list[Ty]:
        pos, kws = self.arg_types(node)
        out = []
        for a, ty in pos + [(v, t) for _, v, t in kws]:
            if isinstance(ty, TStarred):
                ty = ty.inner
            if not quiet:
                self.plain_value(ty, a, f"untrusted callee {what}")
            out.append(ty)
        return out

    def builtin_call(self, node: ast.Call, name: str) -> Ty:
        self.vet(node, name, builtin_is_pure(name))
        if name in ("dataclasses.dataclass", "typing.TypeVar"):
            self.args_plain(node, f"`{name}`", quiet=True)
            return ANY
        pos, kws = self.arg_types(node)
        types = [t.inner if isinstance(t, TStarred) else t for _, t in pos] + [t for _, _, t in kws]
        nodes = [a for a, _ in pos] + [v for _, v, _ in kws]
        structural = name in STRUCTURAL_BUILTINS
        for a, ty in zip(nodes, types):
            if isinstance(ty, TLabeled) or not structural or isinstance(ty, (TLabel, TPrim)):
                self.plain_value(ty, a, f"`{name}`")
        if any(isinstance(t, TErr) for t in types):
            return ERR
        first = types[0] if types else ANY
        return self.builtin_result(name, first, types)

    def builtin_result(self, name: str, first: Ty, types: list[Ty]) -> Ty:
        if name in ("len", "int", "ord", "hash"):
            return INT
        if name in ("float",):
            return FLOAT
        if name in ("bool", "isinstance", "issubclass", "callable", "any", "all"):
            return BOOL
        if name in ("str", "repr", "chr", "format", "input", "bin", "hex", "oct"):
            return STR
        if name == "print":
            return NONE
        if name == "range":
            return TList(INT, frozen=True)
        if name in ("list", "sorted", "reversed"):
            elem = element_type(first) if types else EMPTY
            return TList(elem if elem is not None else ANY)
        if name == "tuple":
            elem = element_type(first) if types else EMPTY
            return TList(elem if elem is not None else ANY, frozen=True)
        if name == "set":
            elem = element_type(first) if types else EMPTY
            return TSet(elem if elem is not None else ANY)
        if name == "dict":
            if types and isinstance(first, TDict):
                return first
            return TDict(EMPTY, EMPTY) if not types else TDict(ANY, ANY)
        if name == "enumerate":
            elem = element_type(first) or ANY
            return TList(TTuple((INT, elem)), frozen=True)
        if name == "zip":
            return TList(TTuple(tuple(element_type(t) or ANY for t in types)), frozen=True)
        if name in ("abs", "min", "max", "sum", "round", "pow", "divmod"):
            if name in ("min", "max") and len(types) == 1:
                elem = element_type(first)
                return elem if elem is not None else ANY
            scal = [t for t in types if isinstance(t, TScalar)]
            return scal[0] if len(scal) == len(types) and scal else TScalar("number")
        if name.startswith("math."):
            return TScalar("number")
        return ANY

    def method_call(self, node: ast.Call, recv: Ty, name: str) -> Ty:
        if isinstance(recv, TErr):
            self.args_plain(node, name, quiet=True)
            return ERR
        if isinstance(recv, TLabeled):
            self.error(
                node, "opacity",
                f"labeled value is opaque: method `.{name}()` on {recv} needs mcall(...)",
                recv.label,
            )
            self.args_plain(node, name, quiet=True)
            return ERR
        if isinstance(recv, TObj) and recv.cls in self.classes and name in self.classes[recv.cls].methods:
            return self.user_call(node, self.classes[recv.cls].methods[name])
        if isinstance(recv, TClass):
            self.vet(node, f"{recv.info.name}.{name}", False)
            self.args_plain(node, f"`{recv.info.name}.{name}`")
            return ANY
        if isinstance(recv, (TList, TDict, TSet, TTuple)) or (isinstance(recv, TScalar) and recv.name in ("str", "bytes")):
            return self.container_method(node, recv, name)
        # unknown receiver: behaves like an untrusted callee
        self.vet(node, f".{name}", name in PURE_METHODS)
        self.args_plain(node, f"`.{name}`")
        return STR if isinstance(recv, TScalar) and recv.name == "str" else ANY

    def container_method(self, node: ast.Call, recv: Ty, name: str) -> Ty:
        func = node.func
        assert isinstance(func, ast.Attribute)
        what = ast.unparse(func.value)
        pos, kws = self.arg_types(node)
        args = [t.inner if isinstance(t, TStarred) else t for _, t in pos] + [t for _, _, t in kws]
        arg_nodes = [a for a, _ in pos] + [v for _, v, _ in kws]
        if any(isinstance(t, TErr) for t in args):
            return ERR
        mutating = name in MUTATING_METHODS
        if mutating:
            if isinstance(recv, TTuple) or (isinstance(recv, TList) and recv.frozen) or isinstance(recv, TScalar):
                self.error(node, "unsupported", f"`{what}` has no method `{name}`")
                return ERR
            self.check_local_write(func.value, node)
            pc = self.eff_pc()
            slot = self.bottom
            if name in ("append", "insert", "extend") and isinstance(recv, TList):
                elem_ty = recv.elem
                new = args[-1] if args else ANY
                if name == "extend":
                    new = element_type(new) if element_type(new) is not None else ANY
                if isinstance(elem_ty, TEmpty):
                    self.refine(func.value, recv, new)
                else:
                    self.compatible(new, elem_ty, node, f"{what}[...]")
            elif name in ("add",) and isinstance(recv, TSet):
                new = args[0] if args else ANY
                if isinstance(recv.elem, TEmpty):
                    self.refine(func.value, recv, new)
                elif not contains_labels(new) and not contains_labels(recv.elem):
                    pass
                else:
                    self.plain_value(new, node, f"set `{what}` (set elements must be unlabeled)")
            elif name in ("update", "setdefault") and isinstance(recv, TDict):
                if name == "setdefault" and len(args) == 2:
                    self.compatible(args[1], recv.val, node, f"{what}[...]")
                elif name == "update" and args:
                    self.compatible(args[0], recv, node, what)
            else:
                for a, t in zip(arg_nodes, args):
                    self.plain_value(t, a, f"`{what}.{name}`")
            if name in ("sort", "remove", "discard") and contains_labels(recv):
                self.error(node, "implicit", f"implicit flow: `{what}.{name}()` compares labeled elements")
            if not self.leq(pc, slot):
                self.error(
                    node, "implicit",
                    f"implicit flow: pc label {pc} does not satisfy FlowsTo<{slot}> for mutation of `{what}`",
                    pc, slot,
                )
            if name == "pop":
                return recv.val if isinstance(recv, TDict) else (recv.elem if isinstance(recv, (TList, TSet)) else ANY)
            if name == "setdefault" and isinstance(recv, TDict):
                return recv.val
            return NONE
        self.vet(node, f"{what}.{name}", name in PURE_METHODS)
        for a, t in zip(arg_nodes, args):
            if not isinstance(t, TLambda):
                self.plain_value(t, a, f"`{what}.{name}`")
        if isinstance(recv, TDict):
            if name == "get":
                return recv.val
            if name == "keys":
                return TList(recv.key, frozen=True)
            if name == "values":
                return TList(recv.val, frozen=True)
            if name == "items":
                return TList(TTuple((recv.key, recv.val)), frozen=True)
            if name == "copy":
                return recv
        if isinstance(recv, (TList, TSet)) and name == "copy":
            return recv
        if name in ("count", "index", "find", "rfind", "bit_length"):
            if name in ("count", "index") and contains_labels(recv):
                self.error(node, "implicit", f"implicit flow: `{what}.{name}()` compares labeled elements")
                return ERR
            return INT
        if isinstance(recv, TScalar) and recv.name == "str":
            if name in ("split", "rsplit", "splitlines"):
                return TList(STR)
            if name.startswith("is") or name in ("startswith", "endswith"):
                return BOOL
            if name in ("partition", "rpartition"):
                return TTuple((STR, STR, STR))
            if name == "encode":
                return SCALARS["bytes"]
            return STR
        if contains_labels(recv) and name not in ("copy",):
            self.error(node, "unsupported", f"`{what}.{name}()` over labeled elements is not lifted")
            return ERR
        return ANY

    def construct(self, node: ast.Call, info: ClassInfo) -> Ty:
        sig = info.init
        if sig is None:
            self.vet(node, info.name, not self.vetting())
            self.args_plain(node, f"`{info.name}`")
            return TObj(info.name)
        self.vet(node, info.name, sig.side_effect_free or info.is_dataclass)
        self.bind_call(node, sig)
        return TObj(info.name)

    def user_call(self, node: ast.Call, sig: FuncSig) -> Ty:
        self.vet(node, sig.name, sig.side_effect_free)
        binding = self.bind_call(node, sig)
        if binding is None:
            return ERR
        result = subst(sig.returns, binding)
        leftover = [v for v in labels_in(result) if isinstance(v, LVar) and v in sig.label_vars and v not in binding]
        if leftover:
            self.error(node, "lattice", f"cannot infer label {leftover[0]} in call to `{sig.name}`")
            return ERR
        return result

    def bind_call(self, node: ast.Call, sig: FuncSig) -> dict[LVar, Label] | None:
        pos, kws = self.arg_types(node)
        binding: dict[LVar, Label] = {}
        ok = True
        params = list(sig.params)
        supplied: set[str] = set()
        for i, (a, ty) in enumerate(pos):
            if isinstance(ty, TStarred):
                ok &= self.plain_value(ty.inner, a, f"`*` arguments of `{sig.name}`")
                supplied.update(p.name for p in params[i:])
                continue
            if i < len(params):
                ok &= self.match_param(params[i], ty, a, binding, sig)
                supplied.add(params[i].name)
            elif sig.vararg:
                ok &= self.plain_value(ty, a, f"`*args` of `{sig.name}`")
            else:
                self.error(a, "unsupported", f"too many arguments in call to `{sig.name}`")
                ok = False
        by_name = {p.name: p for p in params}
        for name, v, ty in kws:
            if name is None:
                ok &= self.plain_value(ty, v, f"`**` arguments of `{sig.name}`")
                supplied.update(by_name)
                continue
            if name in by_name:
                ok &= self.match_param(by_name[name], ty, v, binding, sig)
                supplied.add(name)
            elif sig.kwarg:
                ok &= self.plain_value(ty, v, f"`**kwargs` of `{sig.name}`")
            else:
                self.error(v, "unsupported", f"unexpected keyword `{name}` in call to `{sig.name}`")
                ok = False
        for p in params:
            if p.name not in supplied and not p.has_default:
                self.error(node, "unsupported", f"missing argument `{p.name}` in call to `{sig.name}`")
                ok = False
        return binding if ok else None

    def match_param(self, param: Param, arg: Ty, node: ast.AST, binding: dict, sig: FuncSig) -> bool:
        if isinstance(arg, TErr):
            return False
        expected = subst(param.ty, binding)
        self.bind_vars(expected, arg, binding, sig)
        expected = subst(expected, binding)
        if isinstance(arg, TLambda) and not contains_labels(expected):
            return True
        return self.compatible(arg, expected, node, f"parameter `{param.name}` of `{sig.name}`")

    def bind_vars(self, expected: Ty, arg: Ty, binding: dict, sig: FuncSig) -> None:
        if isinstance(expected, TLabeled):
            if isinstance(expected.label, LVar) and expected.label in sig.label_vars and expected.label not in binding:
                if isinstance(arg, TLabeled):
                    binding[expected.label] = arg.label
            return
        pairs: list[tuple[Ty, Ty]] = []
        if isinstance(expected, (TList, TSet)) and isinstance(arg, (TList, TSet)):
            pairs = [(expected.elem, arg.elem)]
        elif isinstance(expected, TDict) and isinstance(arg, TDict):
            pairs = [(expected.key, arg.key), (expected.val, arg.val)]
        elif isinstance(expected, TTuple) and isinstance(arg, TTuple) and len(expected.items) == len(arg.items):
            pairs = list(zip(expected.items, arg.items))
        for e, a in pairs:
            self.bind_vars(e, a, binding, sig)

    # ------------------------------------------------------------- primitives
    def primitive(self, node: ast.Call, name: str) -> Ty:
        handler = getattr(self, "p_" + name, None)
        if handler is None:
            self.error(node, "unsupported", f"`{name}` cannot be used here")
            return ERR
        return handler(node)

    def need_args(self, node: ast.Call, name: str, n: int) -> bool:
        if len(node.args) != n or node.keywords:
            self.error(node, "unsupported", f"{name}() takes exactly {n} positional argument(s)")
            return False
        return True

    def labeled_ctor(self, node: ast.Call) -> Ty:
        declared = self.ann(node.func)
        if not isinstance(declared, TLabeled) or not self.need_args(node, "Labeled[...]", 1):
            return ERR
        value = self.expr(node.args[0])
        self.erase_calls[id(node)] = ("arg0",)
        if not isinstance(value, TErr) and self.plain_value(value, node.args[0], "Labeled[...] (payload must be unlabeled)"):
            return declared
        return ERR

    def p_label_new(self, node: ast.Call) -> Ty:
        if not self.need_args(node, "label_new", 2):
            return ERR
        self.erase_calls[id(node)] = ("arg0",)
        value = self.expr(node.args[0])
        label = self.label_arg(node.args[1])
        if label is None or isinstance(value, TErr):
            return ERR
        if contains_labels(value) or isinstance(value, (TLabel, TPrim)):
            self.error(node, "unsupported", f"label_new payload must be unlabeled, found {value}; use relabel")
            return ERR
        return TLabeled(label, value)

    def p_lift_public(self, node: ast.Call) -> Ty:
        if not self.need_args(node, "lift_public", 1):
            return ERR
        self.erase_calls[id(node)] = ("arg0",)
        value = self.expr(node.args[0])
        if isinstance(value, TErr):
            return ERR
        if contains_labels(value) or isinstance(value, (TLabel, TPrim)):
            self.error(node, "unsupported", f"lift_public payload must be unlabeled, found {value}")
            return ERR
        return TLabeled(self.bottom, value)

    def p_relabel(self, node: ast.Call) -> Ty:
        if not self.need_args(node, "relabel", 2):
            return ERR
        self.erase_calls[id(node)] = ("arg0",)
        value = self.expr(node.args[0])
        target = self.label_arg(node.args[1])
        if target is None or isinstance(value, TErr):
            return ERR
        if isinstance(value, TLabeled):
            source, payload = value.label, value.payload
        elif contains_labels(value) or isinstance(value, (TLabel, TPrim)):
            self.error(node, "unsupported", f"relabel expects a labeled or unlabeled scalar value, found {value}")
            return ERR
        else:
            source, payload = self.bottom, value
        if not self.leq(source, target):
            self.error(
                node, "relabel",
                f"relabel from {source} to {target} is rejected: the trait bound `{source}: FlowsTo<{target}>` is not satisfied",
                source, target,
            )
            return ERR
        if source != target and is_mutable(payload):
            self.error(
                node, "relabel",
                f"relabel of a mutable {payload} from {source} to {target} would alias data under two labels; "
                "only identical labels are allowed for mutable payloads",
                source, target,
            )
            return ERR
        return TLabeled(target, payload)

    def p_declassify(self, node: ast.Call) -> Ty:
        if not self.need_args(node, "declassify", 1):
            return ERR
        self.erase_calls[id(node)] = ("arg0",)
        value = self.expr(node.args[0])
        if isinstance(value, TErr):
            return ERR
        return strip_labels(value)

    def p_unchecked_operation(self, node: ast.Call) -> Ty:
        if not self.need_args(node, "unchecked_operation", 1):
            return ERR
        self.erase_calls[id(node)] = ("arg0",)
        return ANY

    def p_secret_input(self, node: ast.Call) -> Ty:
        return self.input_call(node, "secret")

    def p_public_input(self, node: ast.Call) -> Ty:
        return self.input_call(node, "public")

    def input_call(self, node: ast.Call, kind: str) -> Ty:
        if not node.args or not isinstance(node.args[0], ast.Constant) or not isinstance(node.args[0].value, str):
            self.error(node, "unsupported", f"{kind}_input needs a string key as its first argument")
            return ERR
        key = node.args[0].value
        type_node = node.args[1] if len(node.args) > 1 else next((k.value for k in node.keywords if k.arg == "type_"), None)
        default = node.args[2] if len(node.args) > 2 else next((k.value for k in node.keywords if k.arg == "default"), None)
        ty = self.ann(type_node) if type_node is not None else ANY
        if kind == "secret" and not contains_labels(ty):
            self.error(node, "unsupported", f"secret_input({key!r}) must declare a labeled type")
            return ERR
        if kind == "public" and contains_labels(ty):
            self.error(node, "unsupported", f"public_input({key!r}) must declare an unlabeled type")
            return ERR
        if self.eff_pc() != self.bottom or self.pc_depth:
            self.error(node, "side-effect", f"{kind}_input cannot be read inside a pc_block")
        if default is not None:
            self.plain_value(self.expr(default), default, f"the {kind}_input default")
        self.inputs[key] = (kind, ty)
        self.erase_calls[id(node)] = ("input", kind, key, default)
        return ty

    def p_fcall(self, node: ast.Call) -> Ty:
        if not self.need_args(node, "fcall", 1):
            return ERR
        self.erase_calls[id(node)] = ("arg0",)
        inner = node.args[0]
        if not isinstance(inner, ast.Call):
            self.error(node, "unsupported", "fcall expects a call expression: fcall(f(args...))")
            return ERR
        fnode = inner.func
        name = ast.unparse(fnode)
        callee = self.expr(fnode)
        if isinstance(callee, TErr):
            return ERR
        if isinstance(callee, TPrim):
            self.error(node, "unsupported", f"fcall cannot wrap the primitive `{name}`")
            return ERR
        ok_vet = True
        if isinstance(callee, TFunc):
            sig = callee.sig
            if any(contains_labels(p.ty) for p in sig.params):
                self.error(node, "unsupported", f"`{name}` already takes labeled parameters; call it directly instead of through fcall")
                return ERR
            ok_vet = sig.side_effect_free
            result_payload = sig.returns if not contains_labels(sig.returns) else ANY
        elif isinstance(callee, TBuiltin):
            ok_vet = builtin_is_pure(callee.name)
            result_payload = None
        elif isinstance(callee, TClass):
            ok_vet = callee.info.is_dataclass
            result_payload = TObj(callee.info.name)
        else:
            ok_vet = False
            result_payload = ANY
        self.vet(inner, name, ok_vet)
        pos, kws = self.arg_types(inner)
        entries = [(a, t.inner if isinstance(t, TStarred) else t) for a, t in pos] + [(v, t) for _, v, t in kws]
        labels: list[Label] = []
        raw: list[Ty] = []
        for a, ty in entries:
            if isinstance(ty, TErr):
                return ERR
            if isinstance(ty, TLabeled):
                labels.append(ty.label)
                raw.append(ty.payload)
            elif contains_labels(ty) or isinstance(ty, (TLabel, TPrim)):
                self.error(a, "unsupported", f"fcall arguments must be Labeled values or unlabeled values, found {ty}")
                return ERR
            else:
                labels.append(self.bottom)
                raw.append(ty)
        result = self.join_all(labels, node)
        if result is None:
            return ERR
        for (a, ty), lab in zip(entries, labels):
            if isinstance(ty, TLabeled) and is_mutable(ty.payload) and ty.label != result:
                self.error(
                    a, "relabel",
                    f"mutable argument labeled {ty.label} passed to fcall whose result is labeled {result}; "
                    "mutable arguments must carry exactly the joined label",
                    ty.label, result,
                )
                return ERR
            if not isinstance(ty, TLabeled) and is_mutable(ty) and not isinstance(ty, TLambda) \
                    and not isinstance(ty, FUNCTION_LIKE) and result != self.bottom:
                self.error(
                    a, "relabel",
                    f"mutable unlabeled argument passed to fcall whose result is labeled {result}; "
                    f"label it {result} first",
                    self.bottom, result,
                )
                return ERR
        if result_payload is None:
            result_payload = self.builtin_result(callee.name, raw[0] if raw else ANY, raw)
        self.calls.append(CallRewriteRecord("function", node.lineno, name, None, tuple(map(str, labels)), str(result)))
        return TLabeled(result, result_payload)

    def p_mcall(self, node: ast.Call) -> Ty:
        if not self.need_args(node, "mcall", 1):
            return ERR
        self.erase_calls[id(node)] = ("arg0",)
        steps: list[tuple[str, ast.AST]] = []
        cur: ast.expr = node.args[0]
        while True:
            if isinstance(cur, ast.Call):
                head = self.lookup_quiet(cur.func)
                if isinstance(head, TPrim) and head.name == "mcall" and len(cur.args) == 1:
                    self.erase_calls[id(cur)] = ("arg0",)
                    cur = cur.args[0]
                    continue
                if isinstance(cur.func, ast.Attribute):
                    steps.append(("call", cur))
                    cur = cur.func.value
                    continue
                break
            if isinstance(cur, ast.Attribute):
                steps.append(("field", cur))
                cur = cur.value
                continue
            if isinstance(cur, ast.Subscript):
                steps.append(("index", cur))
                cur = cur.value
                continue
            break
        if not steps:
            self.error(node, "unsupported", "mcall expects a method call or field access on a receiver")
            return ERR
        root = self.expr(cur)
        if isinstance(root, TErr):
            return ERR
        if isinstance(root, TLabeled):
            label, payload = root.label, root.payload
        elif contains_labels(root) or isinstance(root, (TLabel, TPrim)):
            self.error(cur, "unsupported", f"mcall receiver must be a Labeled value or an unlabeled value, found {root}")
            return ERR
        else:
            label, payload = self.bottom, root
        steps.reverse()
        current = payload
        arg_labels: list[str] = []
        for kind, step in steps:
            if kind == "field":
                current = self.project_field(current, step.attr, step)
            elif kind == "index":
                idx = self.expr(step.slice)
                if not self.plain_value(idx, step.slice, "an mcall index"):
                    return ERR
                current = self.index_payload(current, step.slice)
            else:
                method = step.func.attr
                mutating = method in MUTATING_METHODS
                if self.vetting():
                    ok = method in PURE_METHODS or (mutating and self.leq(self.eff_pc(), label))
                    self.vet(step, f".{method}", ok)
                pos, kws = self.arg_types(step)
                for a, ty in [(a, t) for a, t in pos] + [(v, t) for _, v, t in kws]:
                    if isinstance(ty, TStarred):
                        ty = ty.inner
                    if isinstance(ty, (TLambda,) + FUNCTION_LIKE) and not isinstance(ty, (TPrim,)):
                        continue
                    if isinstance(ty, TErr):
                        return ERR
                    if contains_labels(ty) or isinstance(ty, (TLabel, TPrim)):
                        self.error(a, "unsupported", f"mcall chain arguments must be unlabeled, found {ty}; use fcall")
                        return ERR
                    if is_mutable(ty) and label != self.bottom:
                        self.error(
                            a, "relabel",
                            f"mutable argument passed into an mcall chain at label {label}; pass an immutable value",
                            self.bottom, label,
                        )
                        return ERR
                    arg_labels.append(str(self.bottom))
                current = self.method_result(current, method)
        if contains_labels(current):
            self.error(node, "unsupported", "mcall projection reached a labeled field; access it directly")
            return ERR
        kind = "field-access" if all(k == "field" for k, _ in steps) else "method-chain"
        self.calls.append(CallRewriteRecord(kind, node.lineno, ast.unparse(node.args[0]), str(label), tuple(arg_labels), str(label)))
        return TLabeled(label, current)

    def project_field(self, payload: Ty, attr: str, node: ast.AST) -> Ty:
        if isinstance(payload, TObj) and payload.cls in self.classes:
            info = self.classes[payload.cls]
            if attr in info.fields:
                return info.fields[attr]
            if attr in info.methods:
                return ANY
            self.error(node, "unsupported", f"`{payload.cls}` has no field `{attr}`")
            return ERR
        return ANY

    @staticmethod
    def method_result(recv: Ty, method: str) -> Ty:
        if isinstance(recv, TDict):
            return {"get": recv.val, "keys": TList(recv.key, True), "values": TList(recv.val, True),
                    "items": TList(TTuple((recv.key, recv.val)), True), "copy": recv}.get(method, ANY)
        if isinstance(recv, TScalar) and recv.name == "str":
            if method in ("split", "rsplit", "splitlines"):
                return TList(STR)
            if method.startswith("is") or method in ("startswith", "endswith"):
                return BOOL
            if method in ("count", "find", "index", "rfind"):
                return INT
            if method in ("upper", "lower", "strip", "replace", "title", "lstrip", "rstrip", "casefold"):
                return STR
        if method in ("count", "index", "__len__"):
            return INT
        return ANY

    def p_chain(self, node: ast.Call) -> Ty:
        if not self.need_args(node, "chain", 2):
            return ERR
        value = self.expr(node.args[0])
        k = node.args[1]
        if not isinstance(k, ast.Lambda) or len(k.args.args) != 1 or k.args.defaults:
            self.error(node, "unsupported", "chain expects `lambda v: ...` as its continuation")
            return ERR
        if isinstance(value, TErr):
            return ERR
        if isinstance(value, TLabeled):
            label, payload = value.label, value.payload
        elif contains_labels(value):
            self.error(node, "unsupported", f"chain expects a Labeled value, found {value}")
            return ERR
        else:
            label, payload = self.bottom, value
        self.erase_calls[id(node)] = ("chain",)
        scope = Scope("comp", self.pc, self.func)
        scope.vars[k.args.args[0].arg] = Binding(payload, node.lineno)
        self.scopes.append(scope)
        # the raw payload is only visible at pc >= its label, so its uses are vetted
        outer_depth = self.pc_depth
        self.pc_depth += 1
        try:
            with self.raised(label, node):
                body = self.expr(k.body)
        finally:
            self.pc_depth = outer_depth
            self.scopes.pop()
        if isinstance(body, TErr):
            return ERR
        if not isinstance(body, TLabeled):
            self.error(k, "explicit", f"chain continuation must return a Labeled value, found {body}")
            return ERR
        out = self.join(label, body.label, node)
        if out is None:
            return ERR
        self.calls.append(CallRewriteRecord("function", node.lineno, "chain", None, (str(label), str(body.label)), str(out)))
        return TLabeled(out, body.payload)

    def p_pc_block(self, node: ast.Call) -> Ty:
        self.error(node, "unsupported", "pc_block must be used as `with pc_block(LABEL):`")
        return ERR

    def p_side_effect_free_attr(self, node: ast.Call) -> Ty:
        self.error(node, "unsupported", "side_effect_free_attr is a decorator")
        return ERR

    def p_use_lattice(self, node: ast.Call) -> Ty:
        self.error(node, "lattice", "use_lattice(...) must be a top-level statement")
        return ERR


class TTypeVarAlias(Ty, Frozen):
    """Module-level type alias such as ``Grid = list[list[bool]]``."""

    __slots__ = ("target",)


class TStarred(Ty, Frozen):
    __slots__ = ("inner",)


def check_module(tree: ast.Module, filename: str, lattice: Lattice) -> CheckResult:
    return Checker(tree, filename, lattice).run()
