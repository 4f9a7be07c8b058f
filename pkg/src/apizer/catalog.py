"""Type catalog: a signature database of qualified types, members and supertypes.

The catalog is loaded from a JSON-lines file with one type per line. Generic
signatures are erased; a single upper-case letter in a parameter or return
position is a type variable of the declaring type.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator, Optional

AUTO_IMPORTED_PACKAGE = "java.lang"
OBJECT = "java.lang.Object"
ARRAY_SUPERTYPES = (OBJECT, "java.lang.Cloneable", "java.io.Serializable")
PRIMITIVE_NAMES = frozenset({"boolean", "byte", "char", "short", "int", "long", "float", "double"})

_TYPE_VAR = re.compile(r"^[A-Z]$")
_REQUIRED = {
    "name": str,
    "package": str,
    "library": str,
    "supertypes": list,
    "primitive": bool,
    "methods": list,
    "fields": list,
}


class SchemaError(ValueError):
    def __init__(self, message: str, record: object = None, line: int = 0):
        where = f"line {line}: " if line else ""
        super().__init__(f"{where}{message}")
        self.record = record
        self.line = line


class UnknownType(KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self) -> str:
        return f"unknown type {self.name}"


def is_type_var(type_name: str) -> bool:
    return bool(_TYPE_VAR.match(strip_array(type_name)[0]))


def strip_array(type_name: str) -> tuple[str, int]:
    """Split ``"byte[][]"`` into ``("byte", 2)``; varargs count as one dimension."""
    dims = 0
    while True:
        if type_name.endswith("[]"):
            type_name, dims = type_name[:-2], dims + 1
        elif type_name.endswith("..."):
            type_name, dims = type_name[:-3], dims + 1
        else:
            return type_name, dims


def simple_name(qualified: str) -> str:
    return qualified.rsplit(".", 1)[-1]


@dataclass(frozen=True)
class MethodSig:
    name: str
    params: tuple[str, ...]
    returns: str
    static: bool = False

    @property
    def varargs(self) -> bool:
        return bool(self.params) and self.params[-1].endswith("...")

    @property
    def is_constructor(self) -> bool:
        return self.name == "<init>"

    def accepts_arity(self, n: int) -> bool:
        if self.varargs:
            return n >= len(self.params) - 1
        return n == len(self.params)

    def param_type(self, index: int) -> str:
        """Declared type of the ``index``-th argument, expanding varargs."""
        if self.varargs and index >= len(self.params) - 1:
            return self.params[-1][:-3]
        return self.params[index]


@dataclass(frozen=True)
class FieldSig:
    name: str
    type: str
    static: bool = False


@dataclass(frozen=True)
class TypeEntry:
    name: str
    package: str
    library: str
    supertypes: tuple[str, ...] = ()
    primitive: bool = False
    methods: tuple[MethodSig, ...] = ()
    fields: tuple[FieldSig, ...] = ()
    kind: str = "class"
    type_params: tuple[str, ...] = ()

    @property
    def simple(self) -> str:
        return simple_name(self.name)

    @property
    def auto_imported(self) -> bool:
        return self.primitive or self.package == AUTO_IMPORTED_PACKAGE

    @property
    def is_interface(self) -> bool:
        return self.kind == "interface"


class TypeCatalog:
    """Immutable, validated collection of :class:`TypeEntry` records."""

    def __init__(self, entries: Iterable[TypeEntry]):
        self._entries: dict[str, TypeEntry] = {}
        for entry in entries:
            if entry.name in self._entries:
                raise SchemaError(f"duplicate qualified name {entry.name}", entry.name)
            self._entries[entry.name] = entry
        if not self._entries:
            raise SchemaError("catalog is empty")
        self._by_simple: dict[str, tuple[str, ...]] = {}
        index: dict[str, set[str]] = {}
        for name, entry in self._entries.items():
            index.setdefault(entry.simple, set()).add(name)
            if not entry.primitive and entry.package:
                nested = name[len(entry.package) + 1:]
                if "." in nested:
                    index.setdefault(nested, set()).add(name)
        self._by_simple = {k: tuple(sorted(v)) for k, v in index.items()}
        self._packages: dict[str, tuple[str, ...]] = {}
        pkgs: dict[str, list[str]] = {}
        for name, entry in self._entries.items():
            if not entry.primitive:
                pkgs.setdefault(entry.package, []).append(name)
        self._packages = {k: tuple(sorted(v)) for k, v in pkgs.items()}
        self._check_supertypes()
        self._ancestors: dict[str, tuple[str, ...]] = {}

    # ------------------------------------------------------------ validation

    def _check_supertypes(self) -> None:
        for entry in self._entries.values():
            for sup in entry.supertypes:
                if sup not in self._entries:
                    raise SchemaError(f"{entry.name}: unknown supertype {sup}", entry.name)
        state: dict[str, int] = {}  # 1 = visiting, 2 = done

        for root in self._entries:
            if state.get(root):
                continue
            stack = [(root, iter(self._entries[root].supertypes))]
            state[root] = 1
            while stack:
                node, it = stack[-1]
                nxt = next(it, None)
                if nxt is None:
                    state[node] = 2
                    stack.pop()
                elif state.get(nxt) == 1:
                    raise SchemaError(f"supertype cycle through {nxt}", nxt)
                elif not state.get(nxt):
                    state[nxt] = 1
                    stack.append((nxt, iter(self._entries[nxt].supertypes)))

    # ------------------------------------------------------------ basic access

    def __contains__(self, name: object) -> bool:
        return name in self._entries

    def __iter__(self) -> Iterator[TypeEntry]:
        return iter(self._entries.values())

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TypeCatalog) and self._entries == other._entries

    __hash__ = None  # type: ignore[assignment]

    def get(self, name: str) -> Optional[TypeEntry]:
        return self._entries.get(name)

    def entry(self, name: str) -> TypeEntry:
        try:
            return self._entries[name]
        except KeyError:
            raise UnknownType(name) from None

    def names(self) -> list[str]:
        return sorted(self._entries)

    def packages(self) -> list[str]:
        return sorted(self._packages)

    def package_members(self, package: str) -> tuple[str, ...]:
        return self._packages.get(package, ())

    def library_of(self, name: str) -> str:
        return self.entry(strip_array(name)[0]).library

    def knows(self, type_name: str) -> bool:
        """True for catalog entries and arrays of them."""
        base, _ = strip_array(type_name)
        return base in self._entries

    # ------------------------------------------------------------ queries

    def lookup_simple_name(self, simple: str) -> tuple[str, ...]:
        return self._by_simple.get(simple, ())

    def ancestors(self, name: str) -> tuple[str, ...]:
        """``name`` and all its supertypes, breadth first, ``Object`` last."""
        base, dims = strip_array(name)
        if dims:
            if base not in self._entries:
                raise UnknownType(name)
            return (name,) + ARRAY_SUPERTYPES
        cached = self._ancestors.get(name)
        if cached is not None:
            return cached
        entry = self.entry(name)
        order = [name]
        seen = {name}
        i = 0
        while i < len(order):
            for sup in self._entries[order[i]].supertypes:
                if sup not in seen:
                    seen.add(sup)
                    order.append(sup)
            i += 1
        if not entry.primitive and OBJECT in self._entries:
            if OBJECT in seen:
                order.remove(OBJECT)
            order.append(OBJECT)
        result = tuple(order)
        self._ancestors[name] = result
        return result

    def is_subtype_of(self, t: str, sup: str) -> bool:
        base, dims = strip_array(t)
        if base not in self._entries:
            raise UnknownType(t)
        if t == sup:
            return True
        if dims:
            if sup in ARRAY_SUPERTYPES:
                return True
            sbase, sdims = strip_array(sup)
            if sdims == dims:
                if base in PRIMITIVE_NAMES or sbase in PRIMITIVE_NAMES:
                    return base == sbase
                return sbase in self._entries and self.is_subtype_of(base, sbase)
            if sdims < dims and sbase in ARRAY_SUPERTYPES:
                return True
            return False
        if self._entries[base].primitive:
            return False
        return sup in self.ancestors(t)

    def methods(self, receiver: str, name: str, arity: Optional[int] = None) -> list[tuple[str, MethodSig]]:
        """Matching methods as ``(owner, signature)``, nearest declaration first.

        Overrides further up the hierarchy (same name and parameters) are hidden.
        """
        base, dims = strip_array(receiver)
        if dims:
            if base not in self._entries:
                raise UnknownType(receiver)
            found: list[tuple[str, MethodSig]] = []
            if name == "clone" and arity in (None, 0):
                found.append((receiver, MethodSig("clone", (), receiver)))
            for owner, sig in self.methods(OBJECT, name, arity) if OBJECT in self._entries else []:
                if sig.name != "clone":
                    found.append((owner, sig))
            return found
        found = []
        seen: set[tuple[str, ...]] = set()
        for owner in self.ancestors(receiver):
            for sig in self._entries[owner].methods:
                if sig.name != name or (arity is not None and not sig.accepts_arity(arity)):
                    continue
                key = sig.params
                if key in seen:
                    continue
                seen.add(key)
                found.append((owner, sig))
            if name == "<init>":
                break  # constructors are not inherited
        return found

    def constructors(self, type_name: str, arity: Optional[int] = None) -> list[MethodSig]:
        return [sig for _, sig in self.methods(type_name, "<init>", arity)]

    def has_method_named(self, receiver: str, name: str) -> bool:
        return bool(self.methods(receiver, name))

    def member_return_type(self, receiver: str, method: str, arity: int) -> frozenset[str]:
        """Erased return types of all members ``method`` accepting ``arity`` args."""
        result = set()
        for _, sig in self.methods(receiver, method, arity):
            result.add(self.erase(sig.returns))
        return frozenset(result)

    def field(self, receiver: str, name: str) -> Optional[tuple[str, FieldSig]]:
        base, dims = strip_array(receiver)
        if dims:
            if base not in self._entries:
                raise UnknownType(receiver)
            return (receiver, FieldSig("length", "int")) if name == "length" else None
        for owner in self.ancestors(receiver):
            for f in self._entries[owner].fields:
                if f.name == name:
                    return owner, f
        return None

    def erase(self, type_name: str) -> str:
        base, dims = strip_array(type_name)
        if is_type_var(base):
            base = OBJECT
        return base + "[]" * dims

    def types_with_method(self, name: str, arity: int) -> list[str]:
        """All non-primitive types on which ``name`` with ``arity`` args resolves."""
        return [t for t in self.names() if not self._entries[t].primitive and self.methods(t, name, arity)]

    def types_with_field(self, name: str) -> list[str]:
        return [t for t in self.names() if not self._entries[t].primitive and self.field(t, name)]


# ---------------------------------------------------------------- functional API


def lookup_simple_name(catalog: TypeCatalog, simple: str) -> tuple[str, ...]:
    return catalog.lookup_simple_name(simple)


def is_subtype_of(catalog: TypeCatalog, t: str, sup: str) -> bool:
    return catalog.is_subtype_of(t, sup)


def member_return_type(catalog: TypeCatalog, receiver: str, method: str, arity: int) -> frozenset[str]:
    if not catalog.knows(receiver):
        raise UnknownType(receiver)
    return catalog.member_return_type(receiver, method, arity)


# ---------------------------------------------------------------- loading


def _expect(rec: dict, key: str, kind: type, line: int) -> object:
    if key not in rec:
        raise SchemaError(f"missing key {key!r}", rec, line)
    value = rec[key]
    if not isinstance(value, kind):
        raise SchemaError(f"key {key!r} must be {kind.__name__}", rec, line)
    return value


def _parse_record(rec: object, line: int) -> TypeEntry:
    if not isinstance(rec, dict):
        raise SchemaError("record must be a JSON object", rec, line)
    for key, kind in _REQUIRED.items():
        _expect(rec, key, kind, line)
    name = rec["name"]
    if not name:
        raise SchemaError("empty type name", rec, line)
    if not rec["primitive"] and rec["package"] and not name.startswith(rec["package"] + "."):
        raise SchemaError(f"{name} is not in package {rec['package']}", rec, line)
    if not all(isinstance(s, str) and s for s in rec["supertypes"]):
        raise SchemaError("supertypes must be non-empty strings", rec, line)
    methods = []
    seen = set()
    for m in rec["methods"]:
        if not isinstance(m, dict):
            raise SchemaError("method must be an object", rec, line)
        mname = _expect(m, "name", str, line)
        params = _expect(m, "params", list, line)
        returns = _expect(m, "returns", str, line)
        static = m.get("static", False)
        if not isinstance(static, bool) or not all(isinstance(p, str) and p for p in params):
            raise SchemaError(f"malformed method {mname}", rec, line)
        key = (mname, tuple(params))
        if key in seen:
            raise SchemaError(f"duplicate method signature {mname}({', '.join(params)})", rec, line)
        seen.add(key)
        methods.append(MethodSig(mname, tuple(params), returns, static))
    fields = []
    for f in rec["fields"]:
        if not isinstance(f, dict):
            raise SchemaError("field must be an object", rec, line)
        fields.append(FieldSig(_expect(f, "name", str, line), _expect(f, "type", str, line), bool(f.get("static", False))))
    return TypeEntry(
        name=name,
        package=rec["package"],
        library=rec["library"],
        supertypes=tuple(rec["supertypes"]),
        primitive=rec["primitive"],
        methods=tuple(methods),
        fields=tuple(fields),
        kind=rec.get("kind", "class"),
        type_params=tuple(rec.get("type_params", ())),
    )


def parse_catalog(text: str) -> TypeCatalog:
    entries = []
    names: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.strip():
            continue
        try:
            rec = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc.msg}", raw, lineno) from None
        entry = _parse_record(rec, lineno)
        if entry.name in names:
            raise SchemaError(f"duplicate qualified name {entry.name}", rec, lineno)
        names.add(entry.name)
        entries.append(entry)
    if not entries:
        raise SchemaError("catalog is empty")
    return TypeCatalog(entries)


def load_catalog(path: str | Path) -> TypeCatalog:
    return parse_catalog(Path(path).read_text(encoding="utf-8"))


def bundled_catalog_path() -> Path:
    return Path(str(resources.files("apizer") / "data" / "jdk_catalog.jsonl"))


@lru_cache(maxsize=1)
def default_catalog() -> TypeCatalog:
    return load_catalog(bundled_catalog_path())
