"""Diagnostic engine over a draft, plus import and variable-type recovery.

``analyze`` plays the role of the compiler: it resolves every type name
against the imports and the catalog, checks that every value identifier is
declared, and reports a small set of semantic errors as ``other``.
Checks are lenient whenever a type is unknown, so a single missing
declaration does not cascade into unrelated errors.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Iterable, Optional

from .budget import UNLIMITED, Deadline
from .catalog import PRIMITIVE_NAMES, TypeCatalog
from .jtypes import (
    BOOLEAN, CHAR, DOUBLE, FLOAT, INT, LONG, NULL, NUMERIC_HINT, NUMERIC_ORDER,
    STRING, JType, assignable, binary_promote, from_catalog, is_boolean,
    is_integral, is_numeric, is_string, unary_promote,
)
from .model import (
    MISSING_TYPE, MISSING_VARIABLE, OTHER, ApiDraft, Diagnostic,
    ResolutionState, ScopeState,
)
from .syntax.nodes import (
    ArrayAccess, ArrayInit, Assign, Binary, Block, Break, Cast, ClassLit,
    Conditional, Continue, DoWhile, Empty, ExprStmt, FieldAccess, For, ForEach,
    If, InstanceOf, Literal, LocalVar, MethodCall, Name, New, NewArray, Node,
    Paren, Return, Switch, This, Throw, Try, TypeRef, Unary, While, Wildcard,
)
from .syntax.printer import render_expr

THROWABLE = "java.lang.Throwable"
ITERABLE = "java.lang.Iterable"
_ARITH = {"-", "*", "/", "%"}
_SHIFT = {"<<", ">>", ">>>"}
_REL = {"<", ">", "<=", ">="}
_EQ = {"==", "!="}
_LOGIC = {"&&", "||"}
_BITWISE = {"&", "|", "^"}


class ResolutionError(Exception):
    pass


class Unresolvable(ResolutionError):
    def __init__(self, identifier: str):
        super().__init__(f"no candidate type for {identifier}")
        self.identifier = identifier


class Unrecoverable(ResolutionError):
    def __init__(self, identifier: str):
        super().__init__(f"cannot recover the type of {identifier}")
        self.identifier = identifier


class Untypeable(ResolutionError):
    def __init__(self, expr: object):
        super().__init__(f"cannot type expression {expr!r}")
        self.expr = expr


def _int_constant(e) -> Optional[int]:
    """Value of an int literal expression (optionally negated), else None."""
    sign = 1
    while isinstance(e, (Paren, Unary)):
        if isinstance(e, Unary):
            if e.op != "-" or e.postfix:
                return None
            sign = -sign
        e = e.operand if isinstance(e, Unary) else e.expr
    if isinstance(e, Literal) and e.kind == "int":
        text = e.text.replace("_", "")
        try:
            if text.lower().startswith("0x"):
                return sign * int(text, 16)
            if text.lower().startswith("0b"):
                return sign * int(text[2:], 2)
            if len(text) > 1 and text.startswith("0"):
                return sign * int(text, 8)
            return sign * int(text)
        except ValueError:
            return None
    if isinstance(e, Literal) and e.kind == "char" and len(e.text) == 3:
        return ord(e.text[1])
    return None


def dotted_parts(e) -> Optional[list[str]]:
    """``a.b.c`` as ``["a", "b", "c"]`` when ``e`` is a plain name chain."""
    parts = []
    while isinstance(e, FieldAccess):
        parts.append(e.name)
        e = e.target
    if not isinstance(e, Name):
        return None
    parts.append(e.id)
    return parts[::-1]


class Analyzer:
    """One pass of name and type checking over a draft or expression.

    With ``record=True`` the analyzer also keeps the computed type of every
    expression and the type each expression was expected to have, keyed by
    node identity; variable-type recovery reads these.
    """

    def __init__(self, catalog: TypeCatalog, state: ResolutionState,
                 deadline: Deadline = UNLIMITED, record: bool = False):
        self.catalog = catalog
        self.state = state
        self.deadline = deadline
        self.record = record
        self.diags: set[Diagnostic] = set()
        self.scopes: list[dict[str, Optional[JType]]] = [{}]
        self.stmt_index = -1
        self.return_type: Optional[JType] = None
        self.void = True
        self.types: dict[int, Optional[JType]] = {}
        self.expected: dict[int, list[JType]] = {}
        self._type_cache: dict[str, Optional[str]] = {}
        self.explicit: dict[str, str] = {}
        self.on_demand: list[str] = []
        self._load_imports()

    # ------------------------------------------------------------ reporting

    def report(self, kind: str, identifier: str, message: str = "") -> None:
        self.diags.add(Diagnostic(self.stmt_index, identifier, kind, message))

    def other(self, identifier: str, message: str) -> None:
        self.report(OTHER, identifier, message)

    def expect(self, e, t: Optional[JType]) -> None:
        if self.record and t is not None:
            self.expected.setdefault(id(e), []).append(t)

    # ------------------------------------------------------------ imports

    def _load_imports(self) -> None:
        for imp in self.state.imports:
            if imp.endswith(".*"):
                pkg = imp[:-2]
                if self.catalog.package_members(pkg):
                    self.on_demand.append(pkg)
                elif pkg in self.catalog:
                    self.on_demand.append(pkg)  # nested types of a class
                else:
                    self.other(imp, "package does not exist")
            elif imp in self.catalog:
                simple = imp.rsplit(".", 1)[-1]
                if simple in self.explicit and self.explicit[simple] != imp:
                    self.other(imp, "conflicting single-type imports")
                self.explicit[simple] = imp
            else:
                self.other(imp, "cannot find imported type")
        for imp in self.state.static_imports:
            owner = imp[:-2] if imp.endswith(".*") else imp.rsplit(".", 1)[0]
            if owner not in self.catalog:
                self.other(imp, "cannot find statically imported type")

    def resolve_type_name(self, name: str) -> Optional[str]:
        """Qualified name for a (possibly dotted) type name, without reporting."""
        if name in self._type_cache:
            return self._type_cache[name]
        result = self._resolve_type_name(name)
        self._type_cache[name] = result
        return result

    def _resolve_type_name(self, name: str) -> Optional[str]:
        if name in PRIMITIVE_NAMES or name == "void":
            return name
        if "." in name:
            entry = self.catalog.get(name)
            if entry is not None and not entry.primitive:
                return name
            head, rest = name.split(".", 1)
            outer = self._resolve_simple(head)
            if outer and f"{outer}.{rest}" in self.catalog:
                return f"{outer}.{rest}"
            return None
        return self._resolve_simple(name)

    def _resolve_simple(self, simple: str) -> Optional[str]:
        if simple in self.explicit:
            return self.explicit[simple]
        for q in self.catalog.lookup_simple_name(simple):
            entry = self.catalog.get(q)
            if entry.primitive:
                continue
            container = q[: -len(simple) - 1]
            if container == "java.lang" or container in self.on_demand:
                return q
        return None

    def static_member_owner(self, name: str, method: bool) -> Optional[str]:
        for imp in self.state.static_imports:
            if imp.endswith(".*"):
                owner = imp[:-2]
            else:
                owner, member = imp.rsplit(".", 1)
                if member != name:
                    continue
            if owner not in self.catalog:
                continue
            if method and any(s.static for _, s in self.catalog.methods(owner, name)):
                return owner
            if not method:
                found = self.catalog.field(owner, name)
                if found and found[1].static:
                    return owner
        return None

    # ------------------------------------------------------------ types

    def type_ref(self, tr: TypeRef) -> Optional[JType]:
        q = self.resolve_type_name(tr.name)
        if q is None:
            if "." in tr.name and tr.name[0].islower():
                ident = tr.name
            else:
                ident = tr.name.split(".")[0]
                if self.resolve_type_name(ident) is not None:
                    self.other(tr.name, "cannot find nested type")
                    return None
            self.report(MISSING_TYPE, ident, "cannot find type")
            return None
        args = tuple(self.type_arg(a) for a in tr.args)
        if q in PRIMITIVE_NAMES or q == "void":
            args = ()
        return JType(q, tr.dims, args)

    def type_arg(self, a) -> Optional[JType]:
        if isinstance(a, Wildcard):
            if a.bound is None:
                return None
            bound = self.type_ref(a.bound)
            return bound if a.bound_kind == "extends" else None
        t = self.type_ref(a)
        if t is not None and t.is_primitive:
            self.other(a.name, "primitive type argument")
            return None
        return t

    # ------------------------------------------------------------ scopes

    def lookup_var(self, name: str) -> tuple[bool, Optional[JType]]:
        for frame in reversed(self.scopes):
            if name in frame:
                return True, frame[name]
        return False, None

    def declare(self, name: str, t: Optional[JType]) -> None:
        if any(name in frame for frame in self.scopes):
            self.other(name, "variable is already defined")
        self.scopes[-1][name] = t

    def push(self) -> None:
        self.scopes.append({})

    def pop(self) -> None:
        self.scopes.pop()

    # ------------------------------------------------------------ entry points

    def run_draft(self, draft: ApiDraft) -> list[Diagnostic]:
        self.stmt_index = -1
        self.void = draft.is_void
        self.return_type = None if self.void else self.type_ref(draft.return_type)
        for t in draft.throws:
            self.type_ref(t)
        for p in draft.params:
            t = self.type_ref(p.type)
            if p.varargs and t is not None:
                t = t.array_of()
            self.declare(p.name, t)
        self.push()
        for i, stmt in enumerate(draft.body):
            self.deadline.check()
            self.stmt_index = i
            self.stmt(stmt)
        self.pop()
        return sorted(self.diags)

    # ------------------------------------------------------------ statements

    def stmt(self, s) -> None:
        method = getattr(self, "s_" + type(s).__name__, None)
        if method is None:
            self.other(type(s).__name__, "unsupported statement")
            return
        method(s)

    def s_LocalVar(self, s: LocalVar) -> None:
        base = self.type_ref(s.type)
        for d in s.declarators:
            t = base
            if t is not None and d.dims:
                t = t.array_of(d.dims)
            if d.init is not None:
                self.initializer(d.init, t, d.name)
            self.declare(d.name, t)

    def initializer(self, init, t: Optional[JType], name: str) -> None:
        if isinstance(init, ArrayInit):
            self.array_init(init, t, name)
            return
        self.expect(init, t)
        vt = self.expr(init)
        if not assignable(self.catalog, vt, t, _int_constant(init)):
            self.other(name, f"incompatible types: {vt} cannot be converted to {t}")

    def array_init(self, init: ArrayInit, t: Optional[JType], name: str) -> None:
        if t is not None and not t.is_array:
            self.other(name, "illegal array initializer")
            t = None
        elem = t.element() if t is not None else None
        for el in init.elements:
            if isinstance(el, ArrayInit):
                self.array_init(el, elem, name)
            else:
                self.expect(el, elem)
                vt = self.expr(el)
                if not assignable(self.catalog, vt, elem, _int_constant(el)):
                    self.other(name, f"incompatible array element {vt}")

    def s_ExprStmt(self, s: ExprStmt) -> None:
        e = s.expr
        ok = isinstance(e, (Assign, MethodCall, New)) or (isinstance(e, Unary) and e.op in ("++", "--"))
        if not ok:
            self.other(render_expr(e), "not a statement")
        self.expr(e)

    def s_Block(self, s: Block) -> None:
        self.push()
        for st in s.stmts:
            self.stmt(st)
        self.pop()

    def condition(self, e) -> None:
        self.expect(e, BOOLEAN)
        t = self.expr(e)
        if t is not None and not is_boolean(t):
            self.other(str(t), "condition must be boolean")

    def s_If(self, s: If) -> None:
        self.condition(s.cond)
        self.scoped(s.then)
        if s.other is not None:
            self.scoped(s.other)

    def scoped(self, s) -> None:
        self.push()
        self.stmt(s)
        self.pop()

    def s_While(self, s: While) -> None:
        self.condition(s.cond)
        self.scoped(s.body)

    def s_DoWhile(self, s: DoWhile) -> None:
        self.scoped(s.body)
        self.condition(s.cond)

    def s_For(self, s: For) -> None:
        self.push()
        for init in s.init:
            self.stmt(init)
        if s.cond is not None:
            self.condition(s.cond)
        for u in s.update:
            self.expr(u)
        self.scoped(s.body)
        self.pop()

    def s_ForEach(self, s: ForEach) -> None:
        declared = self.type_ref(s.type)
        if declared is not None:
            self.expect(s.iterable, declared.array_of())
        it = self.expr(s.iterable)
        elem: Optional[JType] = None
        if it is not None:
            if it.is_array:
                elem = it.element()
            elif self.catalog.knows(it.name) and not it.is_primitive and self.catalog.is_subtype_of(str(it), ITERABLE):
                elem = it.args[0] if it.args else None
            else:
                self.other(str(it), "for-each not applicable to expression type")
        if elem is not None and not assignable(self.catalog, elem, declared):
            self.other(s.name, f"incompatible types: {elem} cannot be converted to {declared}")
        self.push()
        self.declare(s.name, declared)
        self.stmt(s.body)
        self.pop()

    def s_Try(self, s: Try) -> None:
        self.push()
        for r in s.resources:
            self.stmt(r)
        self.stmt(s.body)
        self.pop()
        for c in s.catches:
            self.push()
            types = [self.type_ref(t) for t in c.types]
            for t in types:
                if t is not None and (t.is_primitive or t.is_array or not self.catalog.is_subtype_of(str(t), THROWABLE)):
                    self.other(str(t), "catch type is not throwable")
            self.declare(c.name, types[0] if len(types) == 1 else None)
            self.stmt(c.body)
            self.pop()
        if s.finally_ is not None:
            self.stmt(s.finally_)

    def s_Return(self, s: Return) -> None:
        if s.expr is None:
            if not self.void:
                self.other("return", "missing return value")
            return
        if self.void:
            self.other("return", "unexpected return value")
            self.expr(s.expr)
            return
        self.expect(s.expr, self.return_type)
        t = self.expr(s.expr)
        if not assignable(self.catalog, t, self.return_type, _int_constant(s.expr)):
            self.other("return", f"incompatible types: {t} cannot be converted to {self.return_type}")

    def s_Throw(self, s: Throw) -> None:
        t = self.expr(s.expr)
        if t is not None and (t.is_primitive or t.is_array or not self.catalog.knows(t.name)
                              or not self.catalog.is_subtype_of(str(t), THROWABLE)):
            self.other(str(t), "thrown value is not throwable")

    def s_Switch(self, s: Switch) -> None:
        t = self.expr(s.expr)
        enum_like = t is not None and not is_string(t) and not is_numeric(t) and not is_boolean(t)
        self.push()
        for case in s.cases:
            for label in case.labels:
                if enum_like and isinstance(label, Name):
                    continue  # enum constant labels are unqualified
                self.expr(label)
            for st in case.body:
                self.stmt(st)
        self.pop()

    def s_Break(self, s: Break) -> None:
        pass

    def s_Continue(self, s: Continue) -> None:
        pass

    def s_Empty(self, s: Empty) -> None:
        pass

    # ------------------------------------------------------------ expressions

    def expr(self, e) -> Optional[JType]:
        method = getattr(self, "e_" + type(e).__name__, None)
        if method is None:
            self.other(type(e).__name__, "unsupported expression")
            return None
        t = method(e)
        if self.record:
            self.types[id(e)] = t
        return t

    def e_Literal(self, e: Literal) -> JType:
        if e.kind in ("int", "long"):
            return LONG if e.text[-1] in "lL" else INT
        if e.kind in ("float", "double"):
            return FLOAT if e.text[-1] in "fF" else DOUBLE
        return {"char": CHAR, "string": STRING, "boolean": BOOLEAN, "null": NULL}[e.kind]

    def e_Name(self, e: Name) -> Optional[JType]:
        found, t = self.lookup_var(e.id)
        if found:
            return t
        owner = self.static_member_owner(e.id, method=False)
        if owner:
            return from_catalog(self.catalog, self.catalog.field(owner, e.id)[1].type)
        if self.resolve_type_name(e.id) is not None:
            self.other(e.id, "type used where a value is expected")
            return None
        self.report(MISSING_VARIABLE, e.id, "cannot find variable")
        return None

    def e_This(self, e: This) -> None:
        self.other("this", "non-static variable this cannot be referenced from a static context")
        return None

    def qualifier(self, e) -> tuple[str, Optional[JType]]:
        """Resolve a member-access target to ``("type", T)`` or ``("value", T)``."""
        if isinstance(e, Name):
            found, t = self.lookup_var(e.id)
            if found:
                self._note(e, t)
                return "value", t
            if self.static_member_owner(e.id, method=False):
                return "value", self.expr(e)
            q = self.resolve_type_name(e.id)
            if q is not None:
                return "type", JType(q)
            if e.id[:1].isupper():
                self.report(MISSING_TYPE, e.id, "cannot find type")
            else:
                self.report(MISSING_VARIABLE, e.id, "cannot find variable")
            self._note(e, None)
            return "value", None
        if isinstance(e, FieldAccess):
            parts = dotted_parts(e)
            if parts is not None and self._is_unbound(parts[0]):
                return self._qualified_chain(parts)
            kind, t = self.qualifier(e.target)
            result = self.member(kind, t, e.name)
            self._note(e, result[1])
            return result
        return "value", self.expr(e)

    def _note(self, e, t: Optional[JType]) -> None:
        if self.record:
            self.types[id(e)] = t

    def _is_unbound(self, name: str) -> bool:
        found, _ = self.lookup_var(name)
        return not found and self.static_member_owner(name, method=False) is None \
            and self.resolve_type_name(name) is None

    def _qualified_chain(self, parts: list[str]) -> tuple[str, Optional[JType]]:
        for i in range(len(parts), 1, -1):
            prefix = ".".join(parts[:i])
            entry = self.catalog.get(prefix)
            if entry is not None and not entry.primitive:
                kind, t = "type", JType(prefix)
                for name in parts[i:]:
                    kind, t = self.member(kind, t, name)
                return kind, t
        if parts[0][:1].isupper():
            self.report(MISSING_TYPE, parts[0], "cannot find type")
        else:
            upper = next((k for k, p in enumerate(parts) if p[:1].isupper()), None)
            if upper is None:
                self.report(MISSING_VARIABLE, parts[0], "cannot find variable")
            else:
                self.report(MISSING_TYPE, ".".join(parts[: upper + 1]), "cannot find type")
        return "value", None

    def member(self, kind: str, t: Optional[JType], name: str) -> tuple[str, Optional[JType]]:
        if t is None:
            return "value", None
        if kind == "type":
            nested = f"{t.name}.{name}"
            if t.dims == 0 and nested in self.catalog:
                return "type", JType(nested)
            found = self.catalog.field(t.name, name) if self.catalog.knows(t.name) and not t.is_primitive else None
            if found is None:
                self.other(name, f"cannot find field {name} in {t}")
                return "value", None
            if not found[1].static:
                self.other(name, "non-static field referenced from a static context")
                return "value", None
            return "value", from_catalog(self.catalog, found[1].type)
        if t.is_primitive or t.name in ("null", "void"):
            self.other(name, f"{t} cannot be dereferenced")
            return "value", None
        if not self.catalog.knows(t.name):
            return "value", None
        found = self.catalog.field(str(t), name)
        if found is None:
            self.other(name, f"cannot find field {name} in {t}")
            return "value", None
        return "value", from_catalog(self.catalog, found[1].type, t)

    def e_FieldAccess(self, e: FieldAccess) -> Optional[JType]:
        kind, t = self.qualifier(e)
        if kind == "type":
            self.other(e.name, "type used where a value is expected")
            return None
        return t

    def e_MethodCall(self, e: MethodCall) -> Optional[JType]:
        if e.target is None:
            owner = self.static_member_owner(e.name, method=True)
            sigs = []
            if owner is not None:
                sigs = [(o, s) for o, s in self.catalog.methods(owner, e.name, len(e.args)) if s.static]
                self._expect_args(sigs, e.args, None)
            arg_types = [self.expr(a) for a in e.args]
            if owner is None:
                self.other(e.name, "cannot find method")
                return None
            if not sigs:
                self.other(e.name, "no static method with matching arity")
                return None
            return self.pick(sigs, arg_types, None, e.args)
        if isinstance(e.target, This):
            self.e_This(e.target)
            for a in e.args:
                self.expr(a)
            return None
        kind, t = self.qualifier(e.target)
        if t is None:
            for a in e.args:
                self.expr(a)
            return None
        if t.is_primitive or t.name in ("null", "void"):
            for a in e.args:
                self.expr(a)
            self.other(e.name, f"{t} cannot be dereferenced")
            return None
        if not self.catalog.knows(t.name):
            for a in e.args:
                self.expr(a)
            return None
        sigs = self.catalog.methods(str(t), e.name, len(e.args))
        if kind == "type":
            static = [(o, s) for o, s in sigs if s.static]
            if sigs and not static:
                self.other(e.name, "non-static method referenced from a static context")
            sigs = static
        if not sigs:
            for a in e.args:
                self.expr(a)
            self.other(e.name, f"cannot find method {e.name}/{len(e.args)} in {t}")
            return None
        self._expect_args(sigs, e.args, t)
        arg_types = [self.expr(a) for a in e.args]
        return self.pick(sigs, arg_types, t, e.args)

    def _expect_args(self, sigs, args, receiver: Optional[JType]) -> None:
        if not self.record:
            return
        for i, a in enumerate(args):
            for _, sig in sigs:
                pt = from_catalog(self.catalog, sig.param_type(i), receiver)
                self.expect(a, pt)

    def pick(self, sigs, arg_types, receiver: Optional[JType], args) -> Optional[JType]:
        """Return type of the call; overload existence is decided by arity alone."""
        rets = [from_catalog(self.catalog, s.returns, receiver) for _, s in sigs]
        if sigs[0][1].is_constructor:
            return rets[0]
        if all(r == rets[0] for r in rets):
            return rets[0]
        params = [[from_catalog(self.catalog, s.param_type(i), receiver) for i in range(len(arg_types))] for _, s in sigs]
        consts = [_int_constant(a) for a in args]
        applicable = [
            k for k in range(len(sigs))
            if all(assignable(self.catalog, a, p, c) for a, p, c in zip(arg_types, params[k], consts))
        ]
        pool = applicable or list(range(len(sigs)))
        if len(pool) == 1:
            return rets[pool[0]]
        exact = [k for k in pool if all(a is not None and p is not None and a.raw() == p.raw()
                                         for a, p in zip(arg_types, params[k]))]
        if len(exact) == 1:
            return rets[exact[0]]
        best = [
            k for k in pool
            if all(all(assignable(self.catalog, p, q) for p, q in zip(params[k], params[j])) for j in pool)
        ]
        if len(best) == 1:
            return rets[best[0]]
        distinct = {rets[k] for k in pool}
        return distinct.pop() if len(distinct) == 1 else None

    def e_New(self, e: New) -> Optional[JType]:
        t = self.type_ref(e.type)
        if t is None or e.type.diamond:
            if t is not None:
                t = t.raw()
        if t is None:
            for a in e.args:
                self.expr(a)
            return None
        if t.is_primitive:
            self.other(str(t), "cannot instantiate a primitive type")
            return None
        entry = self.catalog.get(t.name)
        if entry is not None:
            ctors = [(t.name, s) for s in self.catalog.constructors(t.name, len(e.args))]
            if entry.is_interface or not self.catalog.constructors(t.name):
                self.other(t.name, f"{t.name} cannot be instantiated")
            elif not ctors:
                self.other(t.name, f"no constructor of {t.name} takes {len(e.args)} arguments")
            else:
                self._expect_args(ctors, e.args, t)
        for a in e.args:
            self.expr(a)
        return t

    def e_NewArray(self, e: NewArray) -> Optional[JType]:
        for d in e.dim_exprs:
            self.expect(d, INT)
            dt = self.expr(d)
            if dt is not None and not is_integral(dt):
                self.other(str(dt), "array dimension must be integral")
        t = self.type_ref(e.type)
        total = JType(t.name, t.dims + e.total_dims, t.args) if t is not None else None
        if e.init is not None:
            self.array_init(e.init, total, "array")
        return total

    def e_ArrayInit(self, e: ArrayInit) -> Optional[JType]:
        self.other("{", "array initializer is not allowed here")
        return None

    def e_ArrayAccess(self, e: ArrayAccess) -> Optional[JType]:
        at = self.expr(e.array)
        self.expect(e.index, INT)
        it = self.expr(e.index)
        if it is not None and not is_integral(it):
            self.other(str(it), "array index must be integral")
        if at is None:
            return None
        if not at.is_array:
            self.other(str(at), "array required")
            return None
        return at.element()

    def e_Unary(self, e: Unary) -> Optional[JType]:
        if e.op == "!":
            self.expect(e.operand, BOOLEAN)
            t = self.expr(e.operand)
            if t is not None and not is_boolean(t):
                self.other(e.op, f"bad operand type {t} for unary !")
            return BOOLEAN
        self.expect(e.operand, NUMERIC_HINT)
        t = self.expr(e.operand)
        if e.op in ("++", "--") and not isinstance(e.operand, (Name, FieldAccess, ArrayAccess, Paren)):
            self.other(e.op, "unexpected type: variable required")
        if t is None:
            return None
        if not is_numeric(t) or (e.op == "~" and not is_integral(t)):
            self.other(e.op, f"bad operand type {t} for unary {e.op}")
            return None
        return t if e.op in ("++", "--") else unary_promote(t)

    def e_Binary(self, e: Binary) -> Optional[JType]:
        op = e.op
        if op in _LOGIC:
            for side in (e.left, e.right):
                self.expect(side, BOOLEAN)
                t = self.expr(side)
                if t is not None and not is_boolean(t):
                    self.other(op, f"bad operand type {t} for {op}")
            return BOOLEAN
        if op == "+":
            lt = self.expr(e.left)
            rt = self.expr(e.right)
            if is_string(lt) or is_string(rt):
                return STRING
            for side, other_t in ((e.left, rt), (e.right, lt)):
                self.expect(side, NUMERIC_HINT)
                if other_t is None or is_numeric(other_t):
                    self.expect(side, STRING)
            if lt is None or rt is None:
                return None
            if lt.name == "void" or rt.name == "void" or not (is_numeric(lt) and is_numeric(rt)):
                self.other(op, f"bad operand types {lt}, {rt} for +")
                return None
            return binary_promote(lt, rt)
        if op in _EQ:
            lt = self.expr(e.left)
            rt = self.expr(e.right)
            if lt is not None and rt is not None:
                self.expect(e.left, rt)
                self.expect(e.right, lt)
                if not self._comparable(lt, rt):
                    self.other(op, f"incomparable types {lt} and {rt}")
            elif self.record:
                known = lt or rt
                if known is not None and known != NULL:
                    self.expect(e.right if lt is not None else e.left, known)
            return BOOLEAN
        if op in _BITWISE:
            lt = self.expr(e.left)
            rt = self.expr(e.right)
            if is_boolean(lt) or is_boolean(rt):
                for t in (lt, rt):
                    if t is not None and not is_boolean(t):
                        self.other(op, f"bad operand type {t} for {op}")
                return BOOLEAN
            for side in (e.left, e.right):
                self.expect(side, NUMERIC_HINT)
            for t in (lt, rt):
                if t is not None and not is_integral(t):
                    self.other(op, f"bad operand type {t} for {op}")
                    return None
            return binary_promote(lt, rt) if lt and rt else None
        # arithmetic, shift and relational operators need numeric operands
        for side in (e.left, e.right):
            self.expect(side, NUMERIC_HINT)
        lt = self.expr(e.left)
        rt = self.expr(e.right)
        bad = [t for t in (lt, rt) if t is not None and not is_numeric(t)]
        if op in _SHIFT:
            bad = [t for t in (lt, rt) if t is not None and not is_integral(t)]
        if bad:
            self.other(op, f"bad operand type {bad[0]} for {op}")
            return BOOLEAN if op in _REL else None
        if op in _REL:
            return BOOLEAN
        if lt is None or rt is None:
            return None
        if op in _SHIFT:
            return unary_promote(lt)
        return binary_promote(lt, rt)

    def _comparable(self, a: JType, b: JType) -> bool:
        if is_numeric(a) and is_numeric(b) and (a.is_primitive or b.is_primitive):
            return True
        if is_boolean(a) and is_boolean(b):
            return True
        if a.is_primitive or b.is_primitive:
            return False
        if a == NULL or b == NULL:
            return True
        return assignable(self.catalog, a, b) or assignable(self.catalog, b, a) or \
            (self.catalog.knows(a.name) and self.catalog.knows(b.name)
             and (self._is_interface(a) or self._is_interface(b)))

    def _is_interface(self, t: JType) -> bool:
        entry = self.catalog.get(t.name)
        return t.dims == 0 and entry is not None and entry.is_interface

    def e_Conditional(self, e: Conditional) -> Optional[JType]:
        self.condition(e.cond)
        a = self.expr(e.then)
        b = self.expr(e.other)
        if a is None or b is None:
            return None
        if a == b:
            return a
        if is_numeric(a) and is_numeric(b):
            return binary_promote(a, b)
        if a == NULL:
            return b if not b.is_primitive else None
        if b == NULL:
            return a if not a.is_primitive else None
        if assignable(self.catalog, a, b):
            return b
        if assignable(self.catalog, b, a):
            return a
        return None

    def e_Assign(self, e: Assign) -> Optional[JType]:
        if not isinstance(e.target, (Name, FieldAccess, ArrayAccess, Paren)):
            self.other(e.op, "unexpected type: variable required")
        tt = self.expr(e.target)
        if e.op == "=":
            if isinstance(e.value, ArrayInit):
                self.other("{", "array initializer is not allowed here")
                return tt
            self.expect(e.value, tt)
            vt = self.expr(e.value)
            if not assignable(self.catalog, vt, tt, _int_constant(e.value)):
                self.other(dotted_name(e.target), f"incompatible types: {vt} cannot be converted to {tt}")
            return tt
        vt = self.expr(e.value)
        if e.op == "+=" and is_string(tt):
            return tt
        if e.op in ("&=", "|=", "^=") and is_boolean(tt):
            if vt is not None and not is_boolean(vt):
                self.other(e.op, f"bad operand type {vt} for {e.op}")
            return tt
        self.expect(e.value, NUMERIC_HINT)
        for t in (tt, vt):
            if t is not None and not is_numeric(t):
                self.other(e.op, f"bad operand type {t} for {e.op}")
                break
        return tt

    def e_Cast(self, e: Cast) -> Optional[JType]:
        t = self.type_ref(e.type)
        self.expr(e.expr)
        return t

    def e_InstanceOf(self, e: InstanceOf) -> JType:
        self.expr(e.expr)
        self.type_ref(e.type)
        return BOOLEAN

    def e_Paren(self, e: Paren) -> Optional[JType]:
        return self.expr(e.expr)

    def e_ClassLit(self, e: ClassLit) -> JType:
        t = self.type_ref(e.type)
        if t is None or t.is_primitive or t.name == "void":
            return JType("java.lang.Class")
        return JType("java.lang.Class", 0, (t,))


def dotted_name(e) -> str:
    parts = dotted_parts(e)
    return ".".join(parts) if parts else type(e).__name__


# ---------------------------------------------------------------- public API


def analyze(draft: ApiDraft, state: ResolutionState, catalog: TypeCatalog,
            deadline: Deadline = UNLIMITED) -> list[Diagnostic]:
    """Diagnostics for ``draft`` ordered by statement index, then identifier."""
    return Analyzer(catalog, state, deadline).run_draft(draft)


def count_kinds(diags: Iterable[Diagnostic]) -> dict[str, int]:
    counts = {MISSING_TYPE: 0, MISSING_VARIABLE: 0, OTHER: 0}
    for d in diags:
        counts[d.kind] += 1
    return counts


def _candidate_packages(catalog: TypeCatalog, simple: str) -> dict[str, str]:
    """Importable qualified name per package for a (possibly dotted) simple name."""
    head = simple.split(".")[0]
    result = {}
    for q in catalog.lookup_simple_name(head):
        entry = catalog.get(q)
        if entry.primitive or not entry.package:
            continue
        if q != f"{entry.package}.{head}":
            continue  # nested types are reached through their outer class
        result[entry.package] = q
    return result


def resolve_imports(diags: Iterable[Diagnostic], state: ResolutionState, draft: ApiDraft,
                    catalog: TypeCatalog, deadline: Deadline = UNLIMITED) -> ResolutionState:
    """Greedily add imports for missing types, one package cluster at a time."""
    names: list[str] = []
    for d in diags:
        if d.kind != MISSING_TYPE:
            raise ValueError(f"resolve_imports expects missing-type diagnostics, got {d.kind}")
        if d.identifier not in names:
            names.append(d.identifier)
    candidates = {}
    for name in names:
        pkgs = _candidate_packages(catalog, name) if "." not in name or name[0].isupper() else {}
        if not pkgs:
            raise Unresolvable(name)
        candidates[name] = pkgs
    current = analyze(draft, state, catalog, deadline)
    counts = count_kinds(current)
    unresolved = [n for n in names]
    rejected: set[tuple[str, str]] = set()
    while unresolved:
        deadline.check()
        clusters: dict[str, list[str]] = {}
        for name in unresolved:
            for pkg in candidates[name]:
                if (name, pkg) not in rejected:
                    clusters.setdefault(pkg, []).append(name)
        if not clusters:
            raise Unresolvable(unresolved[0])
        imported = state.imported_packages()
        pkg = min(clusters, key=lambda p: (-len(clusters[p]), p not in imported, not p.startswith("java."), p))
        for name in sorted(clusters[pkg]):
            qualified = candidates[name][pkg]
            trial = state.with_import(qualified, catalog.library_of(qualified))
            trial_diags = analyze(draft, trial, catalog, deadline)
            trial_counts = count_kinds(trial_diags)
            if trial_counts[MISSING_TYPE] < counts[MISSING_TYPE] and trial_counts[OTHER] <= counts[OTHER]:
                state, counts = trial, trial_counts
                unresolved.remove(name)
            else:
                rejected.add((name, pkg))
    return state


# ---------------------------------------------------------------- type references


def to_type_ref(t: JType, state: ResolutionState, catalog: TypeCatalog) -> tuple[TypeRef, ResolutionState]:
    """Source form of ``t`` plus the state with any import it needs."""
    if t.name in PRIMITIVE_NAMES or t.name == "void":
        return TypeRef(t.name, (), t.dims), state
    entry = catalog.entry(t.name)
    nested = t.name[len(entry.package) + 1:] if entry.package else t.name
    outer_simple = nested.split(".")[0]
    outer = f"{entry.package}.{outer_simple}" if entry.package else outer_simple
    analyzer = Analyzer(catalog, state)
    current = analyzer.resolve_type_name(outer_simple)
    if current == outer:
        name = nested
    elif current is None:
        clash = any(imp.rsplit(".", 1)[-1] == outer_simple for imp in state.imports if not imp.endswith(".*"))
        if clash:
            name = t.name
        else:
            state = state.with_import(outer, entry.library)
            name = nested
    else:
        name = t.name
    args: tuple = ()
    if t.args and all(a is not None for a in t.args):
        refs = []
        for a in t.args:
            ref, state = to_type_ref(a, state, catalog)
            refs.append(ref)
        args = tuple(refs)
    return TypeRef(name, args, t.dims), state


def resolve_type_ref(tr: TypeRef, state: ResolutionState, catalog: TypeCatalog) -> Optional[JType]:
    an = Analyzer(catalog, state)
    t = an.type_ref(tr)
    return None if an.diags else t


# ---------------------------------------------------------------- variable types

_CATEGORY_COMMON = (
    "java.lang.String", "java.util.List", "java.util.Map", "java.util.Set",
    "java.io.File", "java.lang.Object",
)


def candidate_rank(t: JType) -> tuple:
    """Ordering used to break ties between validated candidate types."""
    if t.name in PRIMITIVE_NAMES:
        numeric = NUMERIC_ORDER.index(t.name) if t.name in NUMERIC_ORDER else len(NUMERIC_ORDER)
        return (0, t.dims, numeric, "")
    if t.name == "java.lang.String":
        category = 1
    elif t.name.startswith("java.lang."):
        category = 2
    elif t.name.startswith("java.util."):
        category = 3
    elif t.name.startswith("java."):
        category = 4
    else:
        category = 5
    common = _CATEGORY_COMMON.index(t.name) if t.name in _CATEGORY_COMMON else len(_CATEGORY_COMMON)
    return (category, t.dims, common, t.name)


def _parents(nodes) -> dict[int, Node]:
    parent: dict[int, Node] = {}
    for top in nodes:
        for n in top.walk():
            for c in n.children():
                parent[id(c)] = n
    return parent


def usage_candidates(v: str, draft: ApiDraft, state: ResolutionState, catalog: TypeCatalog,
                     deadline: Deadline = UNLIMITED) -> list[tuple[JType, int]]:
    """Candidate types for undeclared ``v`` with an applicability score each."""
    an = Analyzer(catalog, state, deadline, record=True)
    an.run_draft(draft)
    parent = _parents(draft.body)
    cands: dict[JType, int] = {}
    receiver_calls: list[MethodCall] = []

    def add(t: Optional[JType]) -> None:
        if t is None:
            return
        if t == NUMERIC_HINT:
            for name in NUMERIC_ORDER:
                cands.setdefault(JType(name), 0)
            return
        if t.name in ("null", "void"):
            return
        cands.setdefault(t, 0)

    for top in draft.body:
        for n in top.walk():
            if not (isinstance(n, Name) and n.id == v):
                continue
            for t in an.expected.get(id(n), ()):
                add(t)
            p = parent.get(id(n))
            if isinstance(p, MethodCall) and p.target is n:
                receiver_calls.append(p)
                for owner in _declaring_types(catalog, p.name, len(p.args)):
                    add(owner)
            elif isinstance(p, FieldAccess) and p.target is n:
                for owner in catalog.types_with_field(p.name):
                    add(JType(owner))
                if p.name == "length":
                    add(JType("java.lang.String", 1))
                    add(JType("int", 1))
            elif isinstance(p, ArrayAccess) and p.array is n:
                for t in an.expected.get(id(p), ()):
                    if t != NUMERIC_HINT:
                        add(t.array_of())
                    else:
                        add(JType("int", 1))
                if not an.expected.get(id(p)):
                    add(JType("java.lang.String", 1))
                    add(JType("int", 1))
    scored = []
    for t in cands:
        score = 0
        for call in receiver_calls:
            if _applicable(an, catalog, t, call):
                score += 1
        scored.append((t, score))
    return scored


def _declaring_types(catalog: TypeCatalog, name: str, arity: int) -> list[JType]:
    owners = []
    for entry in catalog:
        if entry.primitive:
            continue
        if any(s.name == name and s.accepts_arity(arity) for s in entry.methods):
            owners.append(JType(entry.name))
    return owners


def _applicable(an: Analyzer, catalog: TypeCatalog, t: JType, call: MethodCall) -> bool:
    if t.is_primitive or not catalog.knows(t.name):
        return False
    args = [an.types.get(id(a)) for a in call.args]
    for _, sig in catalog.methods(str(t), call.name, len(call.args)):
        params = [from_catalog(catalog, sig.param_type(i), t) for i in range(len(args))]
        if all(assignable(catalog, a, p) for a, p in zip(args, params)):
            return True
    return False


def recover_var_type(v: str, draft: ApiDraft, state: ResolutionState, catalog: TypeCatalog,
                     deadline: Deadline = UNLIMITED) -> tuple[JType, ResolutionState]:
    """Infer the type of undeclared ``v`` from its usages and validate it.

    A candidate is accepted when declaring ``v`` with it introduces no
    diagnostic that was not already present apart from ``v``'s own.
    """
    baseline = set(analyze(draft, state, catalog, deadline))
    allowed = {d for d in baseline if not (d.kind == MISSING_VARIABLE and d.identifier == v)}
    scored = usage_candidates(v, draft, state, catalog, deadline)
    scored.sort(key=lambda ts: (-ts[1], candidate_rank(ts[0])))
    for t, _ in scored:
        deadline.check()
        try:
            ref, trial_state = to_type_ref(t, state, catalog)
        except KeyError:
            continue
        trial = draft.add_param(ref, v)
        diags = set(analyze(trial, trial_state, catalog, deadline))
        if diags <= allowed:
            return t, trial_state
    raise Unrecoverable(v)


def get_type_of_exp(e, scope: ScopeState, state: ResolutionState, catalog: TypeCatalog) -> JType:
    an = Analyzer(catalog, state)
    for name, tr in scope.types.items():
        an.scopes[0][name] = an.type_ref(tr) if isinstance(tr, TypeRef) else tr
    t = an.expr(e)
    if an.diags or t is None or t.name in ("void", "null"):
        raise Untypeable(e)
    return t


def declared_names(draft: ApiDraft) -> set[str]:
    names = set(draft.param_names)
    for top in draft.body:
        for n in top.walk():
            if isinstance(n, LocalVar):
                names.update(d.name for d in n.declarators)
            elif isinstance(n, ForEach):
                names.add(n.name)
    return names


def with_params_state(draft: ApiDraft, state: ResolutionState) -> ApiDraft:
    return replace(draft, resolution=state)
