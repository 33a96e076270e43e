"""Callees trusted to be free of visible side effects.

The lists cover pure arithmetic and comparison helpers, option-style
accessors and read-only collection operations.  Anything else called under a
pc_block must carry ``@side_effect_free_attr`` or go through
``unchecked_operation``.
"""

PURE_BUILTINS = frozenset({
    "abs", "all", "any", "bool", "chr", "dict", "divmod", "enumerate", "filter", "float",
    "format", "frozenset", "hash", "int", "isinstance", "issubclass", "len", "list", "map",
    "max", "min", "ord", "pow", "range", "repr", "reversed", "round", "set", "sorted", "str",
    "sum", "tuple", "zip", "type", "bin", "hex", "oct", "callable",
})

PURE_MODULES = frozenset({"math", "cmath", "operator"})

PURE_METHODS = frozenset({
    # mappings / sequences, read-only
    "get", "keys", "values", "items", "copy", "count", "index", "__len__", "__contains__",
    "__getitem__",
    # sets, non-mutating
    "union", "intersection", "difference", "symmetric_difference", "issubset", "issuperset",
    "isdisjoint",
    # strings
    "startswith", "endswith", "lower", "upper", "strip", "lstrip", "rstrip", "split", "rsplit",
    "join", "replace", "find", "rfind", "isdigit", "isalpha", "isalnum", "isspace", "isupper",
    "islower", "isnumeric", "format", "encode", "decode", "casefold", "title", "capitalize",
    "zfill", "partition", "rpartition", "splitlines", "ljust", "rjust", "center",
    # numbers
    "bit_length", "conjugate", "is_integer", "real", "imag",
})

MUTATING_METHODS = frozenset({
    "append", "extend", "insert", "pop", "remove", "clear", "sort", "reverse", "update",
    "setdefault", "popitem", "add", "discard",
})

# Builtins that only look at the shape of their argument, never at elements.
STRUCTURAL_BUILTINS = frozenset({"len", "enumerate", "zip", "reversed", "list", "tuple", "iter", "range"})


def builtin_is_pure(name: str) -> bool:
    if "." in name:
        return name.split(".", 1)[0] in PURE_MODULES
    return name in PURE_BUILTINS
