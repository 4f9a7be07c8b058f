"""Statement kinds, unit classification and rendering of finished drafts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .model import ApiDraft
from .syntax.nodes import (
    LOOPS, Assign, Block, ExprStmt, If, LocalVar, MethodDecl, Name, Return,
    SnippetAst, Switch, Try, Unary,
)
from .syntax.printer import INDENT, render_method

DECL_INIT = "decl-init"
DECL_ONLY = "decl-only"
ASSIGNMENT = "assignment"
EXPRESSION = "expression-stmt"
LOOP = "loop"
CONDITIONAL = "conditional"
TRY = "try"
RETURN = "return"
OTHER = "other"

WELL_FORMED = "well-formed-api"
DANGLING = "dangling"
AMBIGUOUS = "ambiguous"
IMPOSSIBLE = "impossible"


class ConsistencyError(ValueError):
    pass


def statement_kind(stmt) -> str:
    if isinstance(stmt, LocalVar):
        return DECL_INIT if any(d.init is not None for d in stmt.declarators) else DECL_ONLY
    if isinstance(stmt, ExprStmt):
        e = stmt.expr
        if isinstance(e, Assign) or (isinstance(e, Unary) and e.op in ("++", "--")):
            return ASSIGNMENT
        return EXPRESSION
    if isinstance(stmt, LOOPS):
        return LOOP
    if isinstance(stmt, (If, Switch)):
        return CONDITIONAL
    if isinstance(stmt, Try):
        return TRY
    if isinstance(stmt, Return):
        return RETURN
    return OTHER


def referenced_names(node) -> set[str]:
    """Identifiers used in value position anywhere under ``node``."""
    if isinstance(node, (tuple, list)):
        out: set[str] = set()
        for n in node:
            out |= referenced_names(n)
        return out
    return {n.id for n in node.walk() if isinstance(n, Name)}


def _has_value_return(stmts) -> bool:
    for s in stmts:
        for n in s.walk():
            if isinstance(n, Return) and n.expr is not None:
                return True
    return False


def method_problems(m: MethodDecl) -> list[str]:
    """Reasons why ``m`` is not a well-formed API, empty when it is."""
    problems = []
    if m.body is None or "abstract" in m.modifiers:
        return ["abstract method"]
    if m.is_constructor:
        return ["constructor"]
    names = [p.name for p in m.params]
    if len(set(names)) != len(names):
        problems.append("duplicate parameter names")
    used = referenced_names(m.body.stmts)
    for p in m.params:
        if p.name not in used:
            problems.append(f"parameter {p.name} is not referenced")
    void = m.return_type.name == "void" and m.return_type.dims == 0
    has_return = _has_value_return(m.body.stmts)
    if not void and not has_return:
        problems.append("non-void method without return statement")
    if void and has_return:
        problems.append("void method returns a value")
    return problems


@dataclass(frozen=True)
class UnitClass:
    kind: str
    method: Optional[MethodDecl] = None
    reason: str = ""


def classify_unit(ast: SnippetAst) -> UnitClass:
    class_methods = [m for c in ast.classes for m in c.methods]
    methods = list(ast.methods) + class_methods
    public = [m for m in methods if "public" in m.modifiers]
    if len(ast.classes) > 1:
        return UnitClass(AMBIGUOUS, reason="more than one class")
    if len(public) > 1:
        return UnitClass(AMBIGUOUS, reason="more than one public method")
    if not methods:
        if ast.statements:
            return UnitClass(DANGLING)
        return UnitClass(IMPOSSIBLE, reason="no method or statements")
    if len(methods) == 1 and not ast.statements:
        m = methods[0]
        if m.body is None or "abstract" in m.modifiers:
            return UnitClass(IMPOSSIBLE, m, "abstract method")
        if m.is_constructor:
            return UnitClass(IMPOSSIBLE, m, "constructor only")
        problems = method_problems(m)
        if not problems:
            return UnitClass(WELL_FORMED, m)
        return UnitClass(DANGLING, m, "; ".join(problems))
    return UnitClass(DANGLING, reason="statements mixed with declarations")


def last_statement_path(stmts) -> list:
    """Path to the effective last statement, looking through trailing try blocks.

    Returns the enclosing ``Try`` nodes followed by the statement itself; empty
    when there is no statement.
    """
    path: list = []
    while stmts:
        last = stmts[-1]
        if isinstance(last, Try) and last.body.stmts:
            path.append(last)
            stmts = last.body.stmts
            continue
        path.append(last)
        return path
    return []


def effective_last(stmts):
    path = last_statement_path(stmts)
    return path[-1] if path else None


def check_draft(draft: ApiDraft) -> list[str]:
    problems = method_problems(draft.to_method())
    last = effective_last(draft.body)
    if not draft.is_void and not (isinstance(last, Return) and last.expr is not None):
        problems.append("last statement of a non-void method must be a return")
    return problems


def format_javadoc(javadoc: str, depth: int) -> list[str]:
    pad = INDENT * depth
    lines = [ln.rstrip().replace("*/", "* /") for ln in javadoc.splitlines() if ln.strip()]
    if not lines:
        return []
    return [f"{pad}/**"] + [f"{pad} * {ln}" for ln in lines] + [f"{pad} */"]


def render_unit(draft: ApiDraft, class_name: str, javadoc: str = "") -> str:
    problems = check_draft(draft)
    if problems:
        raise ConsistencyError("; ".join(problems))
    out = [f"import {imp};" for imp in draft.resolution.imports]
    out += [f"import static {imp};" for imp in draft.resolution.static_imports]
    if out:
        out.append("")
    out.append(f"public class {class_name} {{")
    out.extend(format_javadoc(javadoc, 1))
    render_method(draft.to_method(), 1, out)
    out.append("}")
    return "\n".join(out) + "\n"


def method_body(m: MethodDecl) -> tuple:
    return m.body.stmts if isinstance(m.body, Block) else ()
