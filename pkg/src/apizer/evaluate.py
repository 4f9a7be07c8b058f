"""Comparison metrics between a reference API and a generated one."""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields, replace
from typing import Union

from .syntax import ParseError, parse_snippet
from .syntax.nodes import (
    ArrayInit, LocalVar, MethodDecl, Name, NewArray, Node, Param, Return, TypeRef,
)
from .syntax.printer import render_type

VOID_VOID = "void-void"
VOID_NONVOID = "void-nonvoid"
NONVOID_VOID = "nonvoid-void"
NONVOID_NONVOID = "nonvoid-nonvoid"
CATEGORIES = (VOID_VOID, VOID_NONVOID, NONVOID_VOID, NONVOID_NONVOID)

MethodLike = Union[MethodDecl, str]


def as_method(m: MethodLike) -> MethodDecl:
    """The single method declared by ``m`` (source text or an already parsed method)."""
    if isinstance(m, MethodDecl):
        return m
    ast = parse_snippet(m)
    methods = list(ast.methods) + [x for c in ast.classes for x in c.methods]
    if len(methods) != 1 or ast.statements:
        raise ParseError(0, f"expected exactly one method declaration, found {len(methods)}")
    return methods[0]


# ---------------------------------------------------------------- parameters


def _type_key(t: TypeRef) -> str:
    """Type text with package qualifiers dropped, so ``java.util.Date`` equals ``Date``."""
    return render_type(_simplify_types(t))


def _simplify_types(node):
    if isinstance(node, TypeRef):
        return replace(node, name=node.simple, args=tuple(_simplify_types(a) for a in node.args))
    return node


def reference_sites(m: MethodDecl, name: str) -> tuple[int, ...]:
    """Positions, among all identifier occurrences of the body, where ``name`` is used."""
    if m.body is None:
        return ()
    names = [n for n in m.body.walk() if isinstance(n, Name)]
    return tuple(i for i, n in enumerate(names) if n.id == name)


@dataclass(frozen=True)
class ParamKey:
    type: str
    name: str
    sites: tuple = ()


def param_set(m: MethodLike) -> frozenset[ParamKey]:
    m = as_method(m)
    return frozenset(
        ParamKey(_type_key(p.type) + ("..." if p.varargs else ""), p.name, reference_sites(m, p.name))
        for p in m.params
    )


def params_identical(p: Param, q: Param, m_p: MethodLike = None, m_q: MethodLike = None) -> bool:
    """Same type, same identifier and, when methods are given, the same reference sites."""
    if _type_key(p.type) != _type_key(q.type) or p.varargs != q.varargs or p.name != q.name:
        return False
    if m_p is None or m_q is None:
        return True
    return reference_sites(as_method(m_p), p.name) == reference_sites(as_method(m_q), q.name)


def jaccard_distance(ph, pa) -> float:
    ph, pa = set(ph), set(pa)
    union = ph | pa
    if not union:
        return 0.0
    return 1.0 - len(ph & pa) / len(union)


# ---------------------------------------------------------------- returns


def is_void(m: MethodDecl) -> bool:
    return m.return_type is None or (m.return_type.name == "void" and m.return_type.dims == 0)


def normalize_return(m: MethodLike) -> MethodDecl:
    """Fuse a final ``T a = e; return a;`` pair into ``return e;``."""
    m = as_method(m)
    if m.body is None:
        return m
    stmts = m.body.stmts
    if len(stmts) < 2:
        return m
    decl, ret = stmts[-2], stmts[-1]
    if not (isinstance(decl, LocalVar) and isinstance(ret, Return) and isinstance(ret.expr, Name)):
        return m
    d = decl.declarators[-1]
    if d.name != ret.expr.id or d.init is None:
        return m
    init = d.init
    if isinstance(init, ArrayInit):
        tau = decl.var_type(d)
        init = NewArray(tau.element(), (), tau.dims, init)
    head = (replace(decl, declarators=decl.declarators[:-1]),) if len(decl.declarators) > 1 else ()
    new = stmts[:-2] + head + (Return(init, line=ret.line),)
    return replace(m, body=replace(m.body, stmts=new))


def _rename(node, mapping: dict[str, str]):
    if isinstance(node, Name):
        return replace(node, id=mapping.get(node.id, node.id))
    if not isinstance(node, Node):
        return node
    changes = {}
    for f in fields(node):
        value = getattr(node, f.name)
        if isinstance(value, Node):
            changes[f.name] = _rename(value, mapping)
        elif isinstance(value, tuple) and any(isinstance(v, Node) for v in value):
            changes[f.name] = tuple(_rename(v, mapping) for v in value)
    return replace(node, **changes) if changes else node


def match_params(a: MethodDecl, b: MethodDecl) -> tuple[dict[str, str], dict[str, str]]:
    """Align parameters of two methods and give each aligned pair a shared placeholder.

    Parameters with the same identifier and type pair up first; the rest pair
    with unmatched parameters of the same type in declaration order.
    """
    left, right = list(a.params), list(b.params)
    pairs = []
    for p in list(left):
        q = next((q for q in right if q.name == p.name and _type_key(q.type) == _type_key(p.type)), None)
        if q is not None:
            pairs.append((p, q))
            left.remove(p)
            right.remove(q)
    for p in list(left):
        q = next((q for q in right if _type_key(q.type) == _type_key(p.type)), None)
        if q is not None:
            pairs.append((p, q))
            right.remove(q)
    ma = {p.name: f"#p{i}" for i, (p, _) in enumerate(pairs)}
    mb = {q.name: f"#p{i}" for i, (_, q) in enumerate(pairs)}
    return ma, mb


def return_expressions(m: MethodDecl, mapping: dict[str, str]) -> tuple:
    if m.body is None:
        return ()
    return tuple(
        _rename(_simplify_all(n.expr), mapping)
        for n in m.body.walk() if isinstance(n, Return) and n.expr is not None
    )


def _simplify_all(node):
    if isinstance(node, TypeRef):
        return _simplify_types(node)
    if not isinstance(node, Node):
        return node
    changes = {}
    for f in fields(node):
        value = getattr(node, f.name)
        if isinstance(value, Node):
            changes[f.name] = _simplify_all(value)
        elif isinstance(value, tuple) and any(isinstance(v, Node) for v in value):
            changes[f.name] = tuple(_simplify_all(v) for v in value)
    return replace(node, **changes) if changes else node


def return_equivalence(a: MethodLike, b: MethodLike) -> tuple[str, bool]:
    a, b = normalize_return(a), normalize_return(b)
    va, vb = is_void(a), is_void(b)
    if va and vb:
        return VOID_VOID, True
    if va:
        return VOID_NONVOID, False
    if vb:
        return NONVOID_VOID, False
    if _type_key(a.return_type) != _type_key(b.return_type):
        return NONVOID_NONVOID, False
    ma, mb = match_params(a, b)
    return NONVOID_NONVOID, return_expressions(a, ma) == return_expressions(b, mb)


# ---------------------------------------------------------------- tree diff


def _label(node: Node) -> tuple:
    items = [type(node).__name__]
    for f in fields(node):
        if not f.compare or f.name == "line":
            continue
        value = getattr(node, f.name)
        if isinstance(node, MethodDecl) and f.name == "name":
            continue
        if isinstance(value, Node) or (isinstance(value, tuple) and any(isinstance(v, Node) for v in value)):
            continue
        items.append(value)
    return tuple(items)


@dataclass(frozen=True, eq=False)
class _Tree:
    label: tuple
    children: tuple
    size: int


def _to_tree(node: Node) -> _Tree:
    kids = tuple(_to_tree(c) for c in node.children())
    return _Tree(_label(node), kids, 1 + sum(k.size for k in kids))


def _tree_distance(a: _Tree, b: _Tree) -> int:
    """Top-down edit distance: relabels cost 1, whole-subtree insertions cost their size."""
    memo: dict[tuple[int, int], int] = {}

    def dist(x: _Tree, y: _Tree) -> int:
        key = (id(x), id(y))
        if key in memo:
            return memo[key]
        cost = 0 if x.label == y.label else 1
        xs, ys = x.children, y.children
        prev = [0] * (len(ys) + 1)
        for j, c in enumerate(ys, 1):
            prev[j] = prev[j - 1] + c.size
        for i in range(1, len(xs) + 1):
            cur = [prev[0] + xs[i - 1].size] + [0] * len(ys)
            for j in range(1, len(ys) + 1):
                cur[j] = min(
                    prev[j] + xs[i - 1].size,
                    cur[j - 1] + ys[j - 1].size,
                    prev[j - 1] + dist(xs[i - 1], ys[j - 1]),
                )
            prev = cur
        memo[key] = cost + prev[-1]
        return memo[key]

    return dist(a, b)


def ast_diff_count(a: MethodLike, b: MethodLike) -> int:
    """Number of differing AST nodes between two methods, ignoring their names and layout."""
    return _tree_distance(_to_tree(as_method(a)), _to_tree(as_method(b)))


# ---------------------------------------------------------------- report


@dataclass(frozen=True)
class EvalReport:
    params_equivalent: bool
    missing: int
    common: int
    spurious: int
    jaccard: float
    return_category: str
    return_equivalent: bool
    ast_diff: int

    @property
    def identical(self) -> bool:
        return self.params_equivalent and self.return_equivalent

    def to_dict(self) -> dict:
        return asdict(self)


def evaluate_pair(human: MethodLike, tool: MethodLike) -> EvalReport:
    h, t = as_method(human), as_method(tool)
    ph, pa = param_set(h), param_set(t)
    category, equivalent = return_equivalence(h, t)
    return EvalReport(
        params_equivalent=ph == pa,
        missing=len(ph - pa),
        common=len(ph & pa),
        spurious=len(pa - ph),
        jaccard=jaccard_distance(ph, pa),
        return_category=category,
        return_equivalent=equivalent,
        ast_diff=ast_diff_count(h, t),
    )


def summarize(reports) -> dict:
    """Aggregate counts shaped like the parameter and return tables."""
    reports = list(reports)
    by_category = {c: {"pairs": 0, "equivalent": 0} for c in CATEGORIES}
    for r in reports:
        by_category[r.return_category]["pairs"] += 1
        by_category[r.return_category]["equivalent"] += int(r.return_equivalent)
    return {
        "pairs": len(reports),
        "identical_params": sum(r.params_equivalent for r in reports),
        "identical_returns": sum(r.return_equivalent for r in reports),
        "identical_apis": sum(r.identical for r in reports),
        "zero_ast_diff": sum(r.ast_diff == 0 for r in reports),
        "returns": by_category,
    }
