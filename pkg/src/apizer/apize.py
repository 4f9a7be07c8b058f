"""The APIzation pipeline: fix loop, hard-coded values, return extraction."""

from __future__ import annotations

import time
from dataclasses import dataclass, replace
from typing import Optional

from .budget import UNLIMITED, BudgetExceeded, Deadline
from .catalog import TypeCatalog, default_catalog
from .model import (
    ALREADY_API, APIZED, FAILED, MISSING_TYPE, MISSING_VARIABLE, OTHER, SKIPPED,
    ApiDraft, ApizationResult, ResolutionState, ScopeState,
)
from .naming import SoPage, generate_method_name
from .resolver import (
    ResolutionError, Unrecoverable, Untypeable, analyze, get_type_of_exp,
    recover_var_type, resolve_imports, resolve_type_ref, to_type_ref,
)
from .syntax import LexError, ParseError, parse_snippet, tokenize
from .syntax.printer import render_method
from .syntax.nodes import (
    LOOPS, ArrayAccess, ArrayInit, Assign, Binary, ClassLit, ExprStmt,
    FieldAccess, ForEach, For, Literal, LocalVar, MethodCall, Name, New,
    NewArray, Param, Paren, Return, SnippetAst, Try, TypeRef, Unary,
)
from .units import (
    AMBIGUOUS, IMPOSSIBLE, WELL_FORMED, check_draft, classify_unit,
    last_statement_path, referenced_names,
)

INSERTION_METHODS = frozenset({"add", "put", "push", "offer", "addAll"})
CONTAINER_SUPERTYPES = ("java.util.Collection", "java.util.Map")
OBJECT_REF = TypeRef("Object")
PRIMITIVES = frozenset({"boolean", "byte", "char", "short", "int", "long", "float", "double"})
BOXED = frozenset({
    "java.lang.Integer", "java.lang.Long", "java.lang.Double", "java.lang.Float",
    "java.lang.Short", "java.lang.Byte", "java.lang.Character", "java.lang.Boolean",
})


def _stmts(body) -> tuple:
    if isinstance(body, SnippetAst):
        return body.statements
    if isinstance(body, ApiDraft):
        return tuple(body.body)
    return tuple(body)


# ---------------------------------------------------------------- hard-coded values


def _assigned_var(target) -> Optional[str]:
    """Variable modified by writing to ``target`` (array element stores included)."""
    while isinstance(target, (Paren, ArrayAccess)):
        target = target.expr if isinstance(target, Paren) else target.array
    return target.id if isinstance(target, Name) else None


def _mutated_in(nodes) -> set[str]:
    out = set()
    for node in nodes:
        for n in node.walk():
            if isinstance(n, Assign):
                v = _assigned_var(n.target)
            elif isinstance(n, Unary) and n.op in ("++", "--"):
                v = _assigned_var(n.operand)
            else:
                continue
            if v:
                out.add(v)
    return out


def get_loop_changing_vars(body) -> set[str]:
    """Variables assigned inside any loop body, condition or update, at any depth."""
    result: set[str] = set()
    for top in _stmts(body):
        for n in top.walk():
            if not isinstance(n, LOOPS):
                continue
            parts = [n.body]
            if isinstance(n, For):
                parts += list(n.update)
                if n.cond is not None:
                    parts.append(n.cond)
            elif not isinstance(n, ForEach):
                parts.append(n.cond)
            result |= _mutated_in(parts)
    return result


def has_identifiers(e) -> bool:
    """True when ``e`` mentions a variable, type or method name, or ``null``."""
    for n in e.walk():
        if isinstance(n, (Name, MethodCall, FieldAccess, New, ClassLit)):
            return True
        if isinstance(n, Literal) and n.kind == "null":
            return True
        if isinstance(n, TypeRef) and n.name not in PRIMITIVES:
            return True
    return False


def _literal_array(e) -> bool:
    if isinstance(e, ArrayInit):
        return all(_literal_array(el) if isinstance(el, ArrayInit) else not has_identifiers(el) for el in e.elements)
    if isinstance(e, NewArray):
        return e.init is not None and not e.dim_exprs and _literal_array(e.init)
    return False


def _insertions(v: str, following) -> int:
    count = 0
    for s in following:
        if not isinstance(s, ExprStmt):
            continue
        e = s.expr
        if isinstance(e, MethodCall) and e.name in INSERTION_METHODS and isinstance(e.target, Name) \
                and e.target.id == v and not any(has_identifiers(a) for a in e.args):
            count += 1
        elif isinstance(e, Assign) and e.op == "=" and isinstance(e.target, ArrayAccess) \
                and _assigned_var(e.target) == v and not has_identifiers(e.value):
            count += 1
    return count


def is_hard_coded(tau: TypeRef, eps, following=(), scope: Optional[ScopeState] = None,
                  catalog: Optional[TypeCatalog] = None, state: Optional[ResolutionState] = None,
                  var: Optional[str] = None) -> bool:
    """Whether initializer ``eps`` of a variable of type ``tau`` is a hard-coded value.

    Primitive and ``String`` values are hard-coded when they mention no
    identifier. Arrays count when initialized with literals only; arrays and
    containers also count when followed by more than one insertion of
    hard-coded values.
    """
    catalog = catalog or default_catalog()
    state = state or ResolutionState()
    if isinstance(eps, ArrayInit) or tau.dims:
        if _literal_array(eps):
            return True
        return var is not None and isinstance(eps, NewArray) and not has_identifiers_in_dims(eps) \
            and _insertions(var, following) > 1
    if tau.name in PRIMITIVES:
        return not has_identifiers(eps)
    t = resolve_type_ref(tau, state, catalog)
    if t is None:
        return False
    if t.name == "java.lang.String" or t.name in BOXED:
        return not has_identifiers(eps)
    if var is None or not catalog.knows(t.name) or t.is_primitive:
        return False
    if not any(catalog.is_subtype_of(str(t), sup) for sup in CONTAINER_SUPERTYPES):
        return False
    if not isinstance(eps, New) or any(has_identifiers(a) for a in eps.args):
        return False
    return _insertions(var, following) > 1


def has_identifiers_in_dims(e: NewArray) -> bool:
    return any(has_identifiers(d) for d in e.dim_exprs)


def _declared_type(stmt: LocalVar, d) -> TypeRef:
    return stmt.var_type(d)


def _read_later(v: str, body: list, i: int) -> bool:
    """Whether ``v`` is used after statement ``i``; unread values would become unused parameters."""
    return v in referenced_names(body[i + 1:])


def extract_parameters_p2(draft: ApiDraft, scope: ScopeState, catalog: TypeCatalog) -> tuple[ApiDraft, ScopeState]:
    """Turn hard-coded top-level initializations into parameters."""
    body = list(draft.body)
    scope.lp_vars = get_loop_changing_vars(body)
    removed_decls: dict[int, set[str]] = {}
    removed_stmts: set[int] = set()
    params = list(draft.params)
    taken = set(draft.param_names)

    def add_param(tau: TypeRef, v: str) -> None:
        params.append(Param(tau, v))
        taken.add(v)

    for i, s in enumerate(body):
        if isinstance(s, LocalVar):
            for d in s.declarators:
                tau = _declared_type(s, d)
                scope.types[d.name] = tau
                if d.init is None:
                    scope.decls[d.name] = i
                    continue
                scope.already_init.add(d.name)
                if d.name in scope.lp_vars or d.name in taken or not _read_later(d.name, body, i):
                    continue
                if is_hard_coded(tau, d.init, body[i + 1:], scope, catalog, draft.resolution, d.name):
                    add_param(tau, d.name)
                    removed_decls.setdefault(i, set()).add(d.name)
        elif isinstance(s, ExprStmt) and isinstance(s.expr, Assign) and s.expr.op == "=" \
                and isinstance(s.expr.target, Name):
            v = s.expr.target.id
            if v in scope.already_init or v not in scope.types:
                continue
            scope.already_init.add(v)
            if v in scope.lp_vars or v in taken or v not in scope.decls or not _read_later(v, body, i):
                continue
            if is_hard_coded(scope.types[v], s.expr.value, body[i + 1:], scope, catalog, draft.resolution, v):
                add_param(scope.types[v], v)
                removed_stmts.add(i)
                removed_decls.setdefault(scope.decls[v], set()).add(v)
    new_body = []
    for i, s in enumerate(body):
        if i in removed_stmts:
            continue
        if i in removed_decls and isinstance(s, LocalVar):
            kept = tuple(d for d in s.declarators if d.name not in removed_decls[i])
            if not kept:
                continue
            s = replace(s, declarators=kept)
        new_body.append(s)
    return replace(draft, params=tuple(params), body=tuple(new_body)), scope


# ---------------------------------------------------------------- undeclared variables


def extract_parameters_p1(draft: ApiDraft, scope: ScopeState, catalog: TypeCatalog,
                          deadline: Deadline = UNLIMITED) -> tuple[ApiDraft, ScopeState]:
    """Declare every undeclared variable as a parameter of its recovered type."""
    diags = analyze(draft, draft.resolution, catalog, deadline)
    missing = []
    for d in diags:
        if d.kind == MISSING_VARIABLE and d.identifier not in missing:
            missing.append(d.identifier)
    # a variable whose only usages involve other undeclared variables becomes
    # typeable once those are parameters, so failures are retried
    while missing:
        deferred: list[tuple[str, Unrecoverable]] = []
        for v in missing:
            try:
                t, state = recover_var_type(v, draft, draft.resolution, catalog, deadline)
            except Unrecoverable as exc:
                deferred.append((v, exc))
                continue
            ref, state = to_type_ref(t, state, catalog)
            draft = replace(draft.add_param(ref, v), resolution=state)
            scope.types[v] = ref
        if len(deferred) == len(missing):
            raise deferred[0][1]
        missing = [v for v, _ in deferred]
    return draft, scope


# ---------------------------------------------------------------- return statement


def _visible_types(draft: ApiDraft, path: list) -> dict[str, TypeRef]:
    """Declared types of parameters and of locals visible at the last statement."""
    types = {p.name: p.type for p in draft.params}
    level = list(draft.body)
    for node in path:
        for s in level:
            if s is node:
                break
            if isinstance(s, LocalVar):
                for d in s.declarators:
                    types[d.name] = s.var_type(d)
        if isinstance(node, Try):
            for r in node.resources:
                for d in r.declarators:
                    types[d.name] = r.var_type(d)
            level = list(node.body.stmts)
    return types


def _replace_last(stmts: tuple, path: list, new: list) -> tuple:
    """Rebuild ``stmts`` with the statement at the end of ``path`` replaced by ``new``."""
    head = path[0]
    assert stmts[-1] is head
    if len(path) == 1:
        return stmts[:-1] + tuple(new)
    inner = _replace_last(head.body.stmts, path[1:], new)
    return stmts[:-1] + (replace(head, body=replace(head.body, stmts=inner)),)


def _is_println(e) -> bool:
    return isinstance(e, MethodCall) and e.name == "println" and len(e.args) == 1 \
        and isinstance(e.target, FieldAccess) and e.target.name == "out" \
        and isinstance(e.target.target, Name) and e.target.target.id == "System"


def strip_leading_literal(e):
    """Drop the first string literal of a left-nested concatenation."""
    if isinstance(e, Binary) and e.op == "+":
        if isinstance(e.left, Literal) and e.left.kind == "string":
            return e.right
        stripped = strip_leading_literal(e.left)
        if stripped is not e.left:
            return replace(e, left=stripped)
    return e


def _returnable(init, tau: TypeRef):
    if isinstance(init, ArrayInit):
        return NewArray(tau.element(), (), tau.dims, init)
    return init


def _declared_at_top(draft: ApiDraft, v: str, block) -> bool:
    """Whether ``v`` is a parameter or a top-level local declared before ``block``."""
    if v in draft.param_names:
        return True
    for stmt in draft.body:
        if stmt is block:
            return False
        if isinstance(stmt, LocalVar) and any(d.name == v for d in stmt.declarators):
            return True
    return False


def extract_return(draft: ApiDraft, scope: ScopeState, catalog: TypeCatalog) -> ApiDraft:
    """Make the last statement the method's return value where a pattern applies."""
    path = last_statement_path(draft.body)
    if not path:
        return draft
    last = path[-1]
    state = draft.resolution
    if isinstance(last, Return):
        if last.expr is None:
            return replace(draft, return_type=TypeRef("void"))
        types = _visible_types(draft, path)
        t = get_type_of_exp(last.expr, ScopeState(types=types), state, catalog)
        ref, state = to_type_ref(t, state, catalog)
        return replace(draft, return_type=ref, resolution=state)
    if isinstance(last, LocalVar) and last.declarators[-1].init is not None:
        d = last.declarators[-1]
        tau = last.var_type(d)
        new = []
        if len(last.declarators) > 1:
            new.append(replace(last, declarators=last.declarators[:-1]))
        new.append(Return(_returnable(d.init, tau), line=last.line))
        return replace(draft, return_type=tau, body=_replace_last(tuple(draft.body), path, new))
    if isinstance(last, ExprStmt) and isinstance(last.expr, Assign) and last.expr.op == "=" \
            and isinstance(last.expr.target, Name) and not isinstance(last.expr.value, ArrayInit):
        v = last.expr.target.id
        types = _visible_types(draft, path)
        tau = scope.types.get(v) or types.get(v)
        if tau is None:
            return draft
        if len(path) > 1 and _declared_at_top(draft, v, path[0]):
            # the value outlives the enclosing block, so return the variable after it
            return replace(draft, return_type=tau, body=tuple(draft.body) + (Return(Name(v), line=last.line),))
        new = [Return(last.expr.value, line=last.line)]
        return replace(draft, return_type=tau, body=_replace_last(tuple(draft.body), path, new))
    if isinstance(last, ExprStmt) and _is_println(last.expr):
        arg = last.expr.args[0]
        if isinstance(arg, Literal):
            return draft
        eps = strip_leading_literal(arg)
        types = _visible_types(draft, path)
        t = get_type_of_exp(eps, ScopeState(types=types), state, catalog)
        ref, state = to_type_ref(t, state, catalog)
        new = [Return(eps, line=last.line)]
        return replace(draft, return_type=ref, resolution=state,
                       body=_replace_last(tuple(draft.body), path, new))
    return draft


# ---------------------------------------------------------------- pipeline


def initial_state(ast: SnippetAst, catalog: TypeCatalog) -> ResolutionState:
    """Imports declared by the snippet itself, with their libraries."""
    state = ResolutionState()
    statics = []
    for imp in ast.imports:
        if imp.static:
            statics.append(imp.name + (".*" if imp.wildcard else ""))
            continue
        name = imp.name + (".*" if imp.wildcard else "")
        library = "jdk"
        if not imp.wildcard and imp.name in catalog:
            library = catalog.library_of(imp.name)
        elif imp.wildcard:
            members = catalog.package_members(imp.name)
            if members:
                library = catalog.library_of(members[0])
        state = state.with_import(name, library)
    return replace(state, static_imports=tuple(statics))


def prune_imports(draft: ApiDraft, keep: tuple) -> ApiDraft:
    """Drop single-type imports added by the pipeline that the method no longer uses."""
    lines: list[str] = []
    render_method(draft.to_method(), 0, lines)
    used = {tok.text for tok in tokenize("\n".join(lines)) if tok.kind == "ident"}
    imports = tuple(
        q for q in draft.resolution.imports
        if q in keep or q.endswith(".*") or q.rsplit(".", 1)[-1] in used
    )
    if imports == draft.resolution.imports:
        return draft
    return replace(draft, resolution=replace(draft.resolution, imports=imports))


class _Failure(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass
class LoopProgress:
    initial: int = 0
    iterations: int = 0


def run_fix_loop(draft: ApiDraft, scope: ScopeState, catalog: TypeCatalog,
                 deadline: Deadline, progress: Optional[LoopProgress] = None) -> ApiDraft:
    """Alternate import and parameter recovery until the draft is clean.

    Every iteration must remove at least one diagnostic, so the loop runs at
    most as many times as there were initial diagnostics.
    """
    progress = progress if progress is not None else LoopProgress()
    diags = analyze(draft, draft.resolution, catalog, deadline)
    progress.initial = len(diags)
    while diags:
        deadline.check()
        others = [d for d in diags if d.kind == OTHER]
        if others:
            raise _Failure(f"other: {others[0].identifier}: {others[0].message}")
        missing_types = [d for d in diags if d.kind == MISSING_TYPE]
        if missing_types:
            state = resolve_imports(missing_types, draft.resolution, draft, catalog, deadline)
            draft = replace(draft, resolution=state)
        else:
            draft, scope = extract_parameters_p1(draft, scope, catalog, deadline)
        progress.iterations += 1
        after = analyze(draft, draft.resolution, catalog, deadline)
        if len(after) >= len(diags):
            raise _Failure("no progress in fix loop")
        diags = after
    return draft


def apize(snippet: str, page: Optional[SoPage] = None, catalog: Optional[TypeCatalog] = None,
          budget: Optional[float] = None, lexicon: Optional[frozenset[str]] = None) -> ApizationResult:
    page = page or SoPage()
    catalog = catalog or default_catalog()
    deadline = Deadline(budget)
    class_name = f"Snippet{page.answer_id}"
    javadoc = page.javadoc()
    start = time.monotonic()

    progress = LoopProgress()

    def result(outcome: str, draft: Optional[ApiDraft], reason: str = "") -> ApizationResult:
        return ApizationResult(draft, class_name, javadoc, outcome, reason,
                               elapsed=time.monotonic() - start, iterations=progress.iterations,
                               initial_diagnostics=progress.initial)

    try:
        ast = parse_snippet(snippet)
    except (ParseError, LexError) as exc:
        return result(FAILED, None, f"parse: {exc}")
    except RecursionError:
        return result(FAILED, None, "parse: nesting too deep")
    state = initial_state(ast, catalog)
    unit = classify_unit(ast)
    if unit.kind == WELL_FORMED:
        m = unit.method
        draft = ApiDraft(
            modifiers=m.modifiers, return_type=m.return_type, name=m.name,
            params=m.params, throws=m.throws, body=m.body.stmts, resolution=state,
        )
        return result(ALREADY_API, draft)
    if unit.kind in (AMBIGUOUS, IMPOSSIBLE):
        return result(SKIPPED, None, unit.kind)
    if unit.method is None and (ast.methods or ast.classes):
        return result(FAILED, None, "unsupported: statements mixed with declarations")

    name = generate_method_name(page.title, page.answer_id, lexicon)
    if unit.method is not None:
        body = unit.method.body.stmts
        used = referenced_names(body)
        params = tuple(p for p in unit.method.params if p.name in used)
        if name == f"snippet{page.answer_id}":
            name = unit.method.name
    else:
        body = ast.statements
        params = ()
    draft = ApiDraft(name=name, params=params, body=body, resolution=state)
    has_return = any(isinstance(n, Return) and n.expr is not None for s in body for n in s.walk())
    if has_return:
        draft = replace(draft, return_type=OBJECT_REF)
    scope = ScopeState()
    try:
        draft = run_fix_loop(draft, scope, catalog, deadline, progress)
        deadline.check()
        if has_return:
            draft = extract_return(draft, scope, catalog)
        else:
            original_last = last_statement_path(draft.body)
            original_last = original_last[-1] if original_last else None
            draft, scope = extract_parameters_p2(draft, scope, catalog)
            remaining = last_statement_path(draft.body)
            if original_last is not None and remaining and remaining[-1] is original_last:
                draft = extract_return(draft, scope, catalog)
        draft = prune_imports(draft, state.imports)
        deadline.check()
        final = analyze(draft, draft.resolution, catalog, deadline)
        if final:
            return result(FAILED, draft, f"other: {final[0]}")
        problems = check_draft(draft)
        if problems:
            return result(FAILED, draft, "inconsistent: " + "; ".join(problems))
    except BudgetExceeded:
        return result(FAILED, None, "budget")
    except _Failure as exc:
        return result(FAILED, None, exc.reason)
    except Unrecoverable as exc:
        return result(FAILED, None, f"unrecoverable: {exc.identifier}")
    except Untypeable:
        return result(FAILED, None, "untypeable return expression")
    except ResolutionError as exc:
        return result(FAILED, None, f"unresolvable: {getattr(exc, 'identifier', exc)}")
    except RecursionError:
        return result(FAILED, None, "nesting too deep")
    return result(APIZED, draft)
