"""Resolved Java types and the conversion rules the diagnostic engine needs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .catalog import PRIMITIVE_NAMES, TypeCatalog, is_type_var, strip_array


@dataclass(frozen=True)
class JType:
    """A resolved type: qualified name, array dimensions and type arguments.

    Unknown type arguments are ``None``; raw types have no arguments.
    """

    name: str
    dims: int = 0
    args: tuple = ()

    def __str__(self) -> str:
        return self.name + "[]" * self.dims

    def display(self) -> str:
        text = self.name
        if self.args:
            text += "<" + ", ".join("?" if a is None else a.display() for a in self.args) + ">"
        return text + "[]" * self.dims

    @property
    def is_array(self) -> bool:
        return self.dims > 0

    @property
    def is_primitive(self) -> bool:
        return self.dims == 0 and self.name in PRIMITIVE_NAMES

    @property
    def is_reference(self) -> bool:
        return not self.is_primitive and self.name not in ("void",)

    def element(self) -> "JType":
        return JType(self.name, self.dims - 1, self.args)

    def array_of(self, dims: int = 1) -> "JType":
        return JType(self.name, self.dims + dims, self.args)

    def raw(self) -> "JType":
        return JType(self.name, self.dims)

    @classmethod
    def parse(cls, text: str) -> "JType":
        base, dims = strip_array(text)
        return cls(base, dims)


BOOLEAN = JType("boolean")
INT = JType("int")
LONG = JType("long")
FLOAT = JType("float")
DOUBLE = JType("double")
CHAR = JType("char")
STRING = JType("java.lang.String")
OBJECT = JType("java.lang.Object")
NULL = JType("null")
VOID = JType("void")
NUMERIC_HINT = JType("#numeric")  # expected-type marker, never a real type

BOXES = {
    "boolean": "java.lang.Boolean",
    "byte": "java.lang.Byte",
    "char": "java.lang.Character",
    "short": "java.lang.Short",
    "int": "java.lang.Integer",
    "long": "java.lang.Long",
    "float": "java.lang.Float",
    "double": "java.lang.Double",
}
UNBOXES = {v: k for k, v in BOXES.items()}

# widening primitive conversions (JLS 5.1.2), reflexive
_WIDENS = {
    "byte": {"byte", "short", "int", "long", "float", "double"},
    "short": {"short", "int", "long", "float", "double"},
    "char": {"char", "int", "long", "float", "double"},
    "int": {"int", "long", "float", "double"},
    "long": {"long", "float", "double"},
    "float": {"float", "double"},
    "double": {"double"},
    "boolean": {"boolean"},
}
NUMERIC_ORDER = ("int", "long", "double", "float", "short", "byte", "char")
_INTEGRAL = {"byte", "short", "char", "int", "long"}


def unboxed(t: Optional[JType]) -> Optional[str]:
    """Primitive name of ``t`` after unboxing, or ``None``."""
    if t is None or t.dims:
        return None
    if t.name in PRIMITIVE_NAMES:
        return t.name
    return UNBOXES.get(t.name)


def is_numeric(t: Optional[JType]) -> bool:
    p = unboxed(t)
    return p is not None and p != "boolean"


def is_integral(t: Optional[JType]) -> bool:
    return unboxed(t) in _INTEGRAL


def is_boolean(t: Optional[JType]) -> bool:
    return unboxed(t) == "boolean"


def is_string(t: Optional[JType]) -> bool:
    return t is not None and t.dims == 0 and t.name == "java.lang.String"


def unary_promote(t: JType) -> JType:
    p = unboxed(t)
    if p in ("byte", "short", "char"):
        return INT
    return JType(p) if p else t


def binary_promote(a: JType, b: JType) -> JType:
    pa, pb = unboxed(a), unboxed(b)
    for wide in ("double", "float", "long"):
        if wide in (pa, pb):
            return JType(wide)
    return INT


def widens(src: str, dst: str) -> bool:
    return dst in _WIDENS.get(src, ())


def is_int_constant_fit(value: int, dst: str) -> bool:
    bounds = {"byte": (-128, 127), "short": (-32768, 32767), "char": (0, 65535)}
    lo, hi = bounds.get(dst, (None, None))
    return lo is not None and lo <= value <= hi


def assignable(catalog: TypeCatalog, src: Optional[JType], dst: Optional[JType], constant: Optional[int] = None) -> bool:
    """Assignment compatibility (JLS 5.2), lenient about unknown types and generics."""
    if src is None or dst is None:
        return True
    if src.name == "void" or dst.name == "void":
        return False
    if src.dims == dst.dims and src.name == dst.name:
        return True
    if src.name == "null":
        return not dst.is_primitive
    if dst.dims == 0 and dst.name == "java.lang.Object":
        return True
    if src.is_primitive and dst.is_primitive:
        if widens(src.name, dst.name):
            return True
        return constant is not None and src.name in ("int", "char", "short", "byte") and is_int_constant_fit(constant, dst.name)
    if src.is_primitive:
        boxed = JType(BOXES[src.name])
        if constant is not None and dst.dims == 0 and dst.name in ("java.lang.Byte", "java.lang.Short", "java.lang.Character"):
            return is_int_constant_fit(constant, UNBOXES[dst.name])
        return _ref_assignable(catalog, boxed, dst)
    if dst.is_primitive:
        p = UNBOXES.get(src.name) if src.dims == 0 else None
        return p is not None and widens(p, dst.name)
    return _ref_assignable(catalog, src, dst)


def _ref_assignable(catalog: TypeCatalog, src: JType, dst: JType) -> bool:
    if not catalog.knows(src.name) or not catalog.knows(dst.name):
        return True
    return catalog.is_subtype_of(str(src), str(dst))


def from_catalog(catalog: TypeCatalog, text: str, receiver: Optional[JType] = None) -> Optional[JType]:
    """Convert a catalog signature type, substituting the receiver's type arguments.

    Type variables that cannot be substituted come back as ``None``.
    """
    base, dims = strip_array(text)
    if is_type_var(base):
        if receiver is None or not receiver.args or receiver.dims:
            return None
        entry = catalog.get(receiver.name)
        if entry is None or base not in entry.type_params:
            return None
        idx = entry.type_params.index(base)
        if idx >= len(receiver.args) or receiver.args[idx] is None:
            return None
        arg = receiver.args[idx]
        return JType(arg.name, arg.dims + dims, arg.args)
    return JType(base, dims)
