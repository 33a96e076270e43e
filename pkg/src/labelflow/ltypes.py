"""Static types tracked by the checker.

Only the label skeleton matters for flow checking; payload structure is kept
just far enough to index containers, project fields and tell immutable
payloads from mutable ones.
"""

from __future__ import annotations

from typing import Union

from ._record import Frozen, Mutable


class LVar(Frozen):
    """A label type variable declared with ``TypeVar``; rigid inside its function."""

    __slots__ = ('name',)

    def __str__(self) -> str:
        return self.name


Label = Union[str, LVar]


class Ty:
    __slots__ = ()


class TScalar(Ty, Frozen):
    __slots__ = ('name',)

    def __str__(self) -> str:
        return self.name


class TAny(Ty, Frozen):
    """Unlabeled value of unknown structure."""

    __slots__ = ()

    def __str__(self) -> str:
        return "object"


class TEmpty(Ty, Frozen):
    """Element type of an empty display; fits any element type."""

    __slots__ = ()

    def __str__(self) -> str:
        return "<empty>"


class TList(Ty, Frozen):
    __slots__ = ('elem', 'frozen')
    _defaults = {'frozen': False}

    def __str__(self) -> str:
        return f"tuple[{self.elem}, ...]" if self.frozen else f"list[{self.elem}]"


class TSet(Ty, Frozen):
    __slots__ = ('elem',)

    def __str__(self) -> str:
        return f"set[{self.elem}]"


class TDict(Ty, Frozen):
    __slots__ = ('key', 'val')

    def __str__(self) -> str:
        return f"dict[{self.key}, {self.val}]"


class TTuple(Ty, Frozen):
    __slots__ = ('items',)

    def __str__(self) -> str:
        return "tuple[" + ", ".join(map(str, self.items)) + "]"


class TObj(Ty, Frozen):
    __slots__ = ('cls',)

    def __str__(self) -> str:
        return self.cls


class TLabeled(Ty, Frozen):
    __slots__ = ('label', 'payload')

    def __str__(self) -> str:
        return f"Labeled[{self.payload}, {self.label}]"


class TLabel(Ty, Frozen):
    """A reference to a label tag, e.g. the ``A`` in ``label_new(x, A)``."""

    __slots__ = ('label',)


    def __str__(self) -> str:
        return f"label {self.label}"


class TModule(Ty, Frozen):
    __slots__ = ('name',)

    def __str__(self) -> str:
        return f"module {self.name}"


class TPrim(Ty, Frozen):
    __slots__ = ('name',)

    def __str__(self) -> str:
        return self.name


class TBuiltin(Ty, Frozen):
    __slots__ = ('name',)

    def __str__(self) -> str:
        return f"builtin {self.name}"


class TTypeVar(Ty, Frozen):
    """A payload-level ``TypeVar`` or typing construct usable only in annotations."""

    __slots__ = ('name',)



class TFunc(Ty, Mutable):
    __slots__ = ('sig',)

    def __str__(self) -> str:
        return f"function {self.sig.name}"


class TClass(Ty, Mutable):
    __slots__ = ('info',)

    def __str__(self) -> str:
        return f"class {self.info.name}"


class TLambda(Ty, Frozen):
    __slots__ = ()

    def __str__(self) -> str:
        return "lambda"


class TErr(Ty, Frozen):
    """Result of an expression that already produced a diagnostic."""

    __slots__ = ()

    def __str__(self) -> str:
        return "<error>"


ANY = TAny()
EMPTY = TEmpty()
ERR = TErr()
INT = TScalar("int")
FLOAT = TScalar("float")
BOOL = TScalar("bool")
STR = TScalar("str")
BYTES = TScalar("bytes")
NONE = TScalar("None")
SCALARS = {"int": INT, "float": FLOAT, "bool": BOOL, "str": STR, "bytes": BYTES, "complex": TScalar("complex")}


class Param(Mutable):
    __slots__ = ('name', 'ty', 'has_default')
    _defaults = {'has_default': False}


class FuncSig(Mutable):
    __slots__ = ('name', 'params', 'returns', 'label_vars', 'side_effect_free', 'vararg', 'kwarg', 'lineno', 'is_method', 'owner')
    _defaults = {'label_vars': frozenset(), 'side_effect_free': False, 'vararg': False, 'kwarg': False, 'lineno': 0, 'is_method': False, 'owner': None}


class ClassInfo(Mutable):
    __slots__ = ('name', 'fields', 'methods', 'is_dataclass', 'init')
    _defaults = {'is_dataclass': False, 'init': None}
    _factories = {'fields': dict, 'methods': dict}


FUNCTION_LIKE = (TFunc, TBuiltin, TLambda, TClass, TPrim)


def contains_labels(ty: Ty) -> bool:
    if isinstance(ty, TLabeled):
        return True
    if isinstance(ty, (TList, TSet)):
        return contains_labels(ty.elem)
    if isinstance(ty, TDict):
        return contains_labels(ty.key) or contains_labels(ty.val)
    if isinstance(ty, TTuple):
        return any(contains_labels(t) for t in ty.items)
    return False


def labels_in(ty: Ty) -> list[Label]:
    if isinstance(ty, TLabeled):
        return [ty.label]
    if isinstance(ty, (TList, TSet)):
        return labels_in(ty.elem)
    if isinstance(ty, TDict):
        return labels_in(ty.key) + labels_in(ty.val)
    if isinstance(ty, TTuple):
        return [lab for t in ty.items for lab in labels_in(t)]
    return []


def strip_labels(ty: Ty) -> Ty:
    if isinstance(ty, TLabeled):
        return ty.payload
    if isinstance(ty, TList):
        return TList(strip_labels(ty.elem), ty.frozen)
    if isinstance(ty, TSet):
        return TSet(strip_labels(ty.elem))
    if isinstance(ty, TDict):
        return TDict(strip_labels(ty.key), strip_labels(ty.val))
    if isinstance(ty, TTuple):
        return TTuple(tuple(strip_labels(t) for t in ty.items))
    return ty


def is_mutable(ty: Ty) -> bool:
    """Conservative: anything not provably immutable may be aliased and written."""
    if isinstance(ty, TLabeled):
        return is_mutable(ty.payload)
    if isinstance(ty, (TScalar, TErr, TLabel) + FUNCTION_LIKE):
        return False
    if isinstance(ty, TTuple):
        return any(is_mutable(t) for t in ty.items)
    if isinstance(ty, TList) and ty.frozen:
        return is_mutable(ty.elem)
    return True


def element_type(ty: Ty) -> Ty | None:
    """Type produced by iterating ``ty``; ``None`` when not iterable."""
    if isinstance(ty, (TList, TSet)):
        return ty.elem
    if isinstance(ty, TDict):
        return ty.key
    if isinstance(ty, TTuple):
        items = set(ty.items)
        return ty.items[0] if len(items) == 1 else (ANY if not any(map(contains_labels, items)) else None)
    if isinstance(ty, TScalar) and ty.name in ("str", "bytes"):
        return ty
    if isinstance(ty, TAny):
        return ANY
    return None


def subst(ty: Ty, binding: dict[LVar, Label]) -> Ty:
    if not binding:
        return ty
    if isinstance(ty, TLabeled):
        label = binding.get(ty.label, ty.label) if isinstance(ty.label, LVar) else ty.label
        return TLabeled(label, ty.payload)
    if isinstance(ty, TList):
        return TList(subst(ty.elem, binding), ty.frozen)
    if isinstance(ty, TSet):
        return TSet(subst(ty.elem, binding))
    if isinstance(ty, TDict):
        return TDict(subst(ty.key, binding), subst(ty.val, binding))
    if isinstance(ty, TTuple):
        return TTuple(tuple(subst(t, binding) for t in ty.items))
    return ty
