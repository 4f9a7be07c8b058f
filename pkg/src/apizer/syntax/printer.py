"""Deterministic source rendering: 4-space indent, one statement per line."""

from __future__ import annotations

from .nodes import (
    ArrayAccess, ArrayInit, Assign, Binary, Block, Break, Cast, ClassDecl,
    ClassLit, Conditional, Continue, DoWhile, Empty, ExprStmt, FieldAccess,
    FieldDecl, For, ForEach, If, Import, InstanceOf, Literal, LocalVar,
    MethodCall, MethodDecl, Name, New, NewArray, Param, Paren, Return,
    SnippetAst, Switch, This, Throw, Try, Unary, While, Wildcard,
)

INDENT = "    "

_PRECEDENCE = {
    "||": 3, "&&": 4, "|": 5, "^": 6, "&": 7, "==": 8, "!=": 8,
    "<": 9, ">": 9, "<=": 9, ">=": 9, "<<": 10, ">>": 10, ">>>": 10,
    "+": 11, "-": 11, "*": 12, "/": 12, "%": 12,
}
_INSTANCEOF = 9


def render_type(t) -> str:
    if isinstance(t, Wildcard):
        if t.bound is None:
            return "?"
        return f"? {t.bound_kind} {render_type(t.bound)}"
    text = t.name
    if t.diamond:
        text += "<>"
    elif t.args:
        text += "<" + ", ".join(render_type(a) for a in t.args) + ">"
    return text + "[]" * t.dims


def _prec(e) -> int:
    if isinstance(e, Assign):
        return 0
    if isinstance(e, Conditional):
        return 1
    if isinstance(e, Binary):
        return _PRECEDENCE[e.op]
    if isinstance(e, InstanceOf):
        return _INSTANCEOF
    if isinstance(e, (Unary, Cast)):
        return 13 if not (isinstance(e, Unary) and e.postfix) else 14
    return 15


def _wrap(e, minimum: int) -> str:
    text = render_expr(e)
    if _prec(e) < minimum:
        return f"({text})"
    return text


def render_expr(e) -> str:
    if isinstance(e, Literal):
        return e.text
    if isinstance(e, Name):
        return e.id
    if isinstance(e, This):
        return "this"
    if isinstance(e, Paren):
        return f"({render_expr(e.expr)})"
    if isinstance(e, FieldAccess):
        return f"{_wrap(e.target, 15)}.{e.name}"
    if isinstance(e, MethodCall):
        args = ", ".join(render_expr(a) for a in e.args)
        if e.target is None:
            return f"{e.name}({args})"
        return f"{_wrap(e.target, 15)}.{e.name}({args})"
    if isinstance(e, New):
        args = ", ".join(render_expr(a) for a in e.args)
        return f"new {render_type(e.type)}({args})"
    if isinstance(e, NewArray):
        text = "new " + render_type(e.type)
        text += "".join(f"[{render_expr(d)}]" for d in e.dim_exprs)
        text += "[]" * e.extra_dims
        if e.init is not None:
            text += render_expr(e.init)
        return text
    if isinstance(e, ArrayInit):
        return "{" + ", ".join(render_expr(x) for x in e.elements) + "}"
    if isinstance(e, ArrayAccess):
        return f"{_wrap(e.array, 15)}[{render_expr(e.index)}]"
    if isinstance(e, Unary):
        if e.postfix:
            return f"{_wrap(e.operand, 14)}{e.op}"
        inner = _wrap(e.operand, 13)
        # keep "- -x" and "+ +x" from fusing into a single token
        if inner[:1] in ("+", "-") and e.op in ("+", "-", "++", "--"):
            return f"{e.op} {inner}"
        return f"{e.op}{inner}"
    if isinstance(e, Binary):
        p = _PRECEDENCE[e.op]
        return f"{_wrap(e.left, p)} {e.op} {_wrap(e.right, p + 1)}"
    if isinstance(e, InstanceOf):
        return f"{_wrap(e.expr, _INSTANCEOF)} instanceof {render_type(e.type)}"
    if isinstance(e, Conditional):
        return f"{_wrap(e.cond, 2)} ? {render_expr(e.then)} : {_wrap(e.other, 1)}"
    if isinstance(e, Assign):
        return f"{_wrap(e.target, 15)} {e.op} {render_expr(e.value)}"
    if isinstance(e, Cast):
        return f"({render_type(e.type)}) {_wrap(e.expr, 13)}"
    if isinstance(e, ClassLit):
        return f"{render_type(e.type)}.class"
    raise TypeError(f"cannot render {type(e).__name__}")


def _declarators(decls) -> str:
    parts = []
    for d in decls:
        text = d.name + "[]" * d.dims
        if d.init is not None:
            text += " = " + render_expr(d.init)
        parts.append(text)
    return ", ".join(parts)


def _local_var(s: LocalVar) -> str:
    prefix = "final " if s.final else ""
    return f"{prefix}{render_type(s.type)} {_declarators(s.declarators)}"


def _body(stmt, depth: int, out: list, head: str) -> None:
    """Emit ``head`` followed by a block or an indented single statement."""
    pad = INDENT * depth
    if isinstance(stmt, Block):
        out.append(f"{pad}{head} {{")
        for inner in stmt.stmts:
            render_stmt(inner, depth + 1, out)
        out.append(f"{pad}}}")
    else:
        out.append(f"{pad}{head}")
        render_stmt(stmt, depth + 1, out)


def render_stmt(s, depth: int, out: list) -> None:
    pad = INDENT * depth
    if isinstance(s, LocalVar):
        out.append(f"{pad}{_local_var(s)};")
    elif isinstance(s, ExprStmt):
        out.append(f"{pad}{render_expr(s.expr)};")
    elif isinstance(s, Return):
        out.append(f"{pad}return;" if s.expr is None else f"{pad}return {render_expr(s.expr)};")
    elif isinstance(s, Block):
        out.append(f"{pad}{{")
        for inner in s.stmts:
            render_stmt(inner, depth + 1, out)
        out.append(f"{pad}}}")
    elif isinstance(s, If):
        _render_if(s, depth, out, f"if ({render_expr(s.cond)})")
    elif isinstance(s, While):
        _body(s.body, depth, out, f"while ({render_expr(s.cond)})")
    elif isinstance(s, DoWhile):
        if isinstance(s.body, Block):
            out.append(f"{pad}do {{")
            for inner in s.body.stmts:
                render_stmt(inner, depth + 1, out)
            out.append(f"{pad}}} while ({render_expr(s.cond)});")
        else:
            out.append(f"{pad}do")
            render_stmt(s.body, depth + 1, out)
            out.append(f"{pad}while ({render_expr(s.cond)});")
    elif isinstance(s, For):
        init = ", ".join(
            _local_var(i) if isinstance(i, LocalVar) else render_expr(i.expr) for i in s.init
        )
        cond = "" if s.cond is None else " " + render_expr(s.cond)
        update = ", ".join(render_expr(u) for u in s.update)
        update = " " + update if update else ""
        _body(s.body, depth, out, f"for ({init};{cond};{update})")
    elif isinstance(s, ForEach):
        final = "final " if s.final else ""
        _body(s.body, depth, out,
              f"for ({final}{render_type(s.type)} {s.name} : {render_expr(s.iterable)})")
    elif isinstance(s, Try):
        head = "try"
        if s.resources:
            head += " (" + "; ".join(_local_var(r) for r in s.resources) + ")"
        out.append(f"{pad}{head} {{")
        for inner in s.body.stmts:
            render_stmt(inner, depth + 1, out)
        for c in s.catches:
            types = " | ".join(render_type(t) for t in c.types)
            out.append(f"{pad}}} catch ({types} {c.name}) {{")
            for inner in c.body.stmts:
                render_stmt(inner, depth + 1, out)
        if s.finally_ is not None:
            out.append(f"{pad}}} finally {{")
            for inner in s.finally_.stmts:
                render_stmt(inner, depth + 1, out)
        out.append(f"{pad}}}")
    elif isinstance(s, Break):
        out.append(f"{pad}break{' ' + s.label if s.label else ''};")
    elif isinstance(s, Continue):
        out.append(f"{pad}continue{' ' + s.label if s.label else ''};")
    elif isinstance(s, Throw):
        out.append(f"{pad}throw {render_expr(s.expr)};")
    elif isinstance(s, Switch):
        out.append(f"{pad}switch ({render_expr(s.expr)}) {{")
        for case in s.cases:
            if case.labels:
                out.append(f"{pad}{INDENT}case {render_expr(case.labels[0])}:")
            else:
                out.append(f"{pad}{INDENT}default:")
            for inner in case.body:
                render_stmt(inner, depth + 2, out)
        out.append(f"{pad}}}")
    elif isinstance(s, Empty):
        out.append(f"{pad};")
    else:
        raise TypeError(f"cannot render {type(s).__name__}")


def _render_if(s: If, depth: int, out: list, head: str) -> None:
    pad = INDENT * depth
    if not isinstance(s.then, Block) or s.other is None:
        _body(s.then, depth, out, head)
        if s.other is not None:
            _render_else(s.other, depth, out)
        return
    out.append(f"{pad}{head} {{")
    for inner in s.then.stmts:
        render_stmt(inner, depth + 1, out)
    if isinstance(s.other, If):
        _render_if_chain(s.other, depth, out)
    elif isinstance(s.other, Block):
        out.append(f"{pad}}} else {{")
        for inner in s.other.stmts:
            render_stmt(inner, depth + 1, out)
        out.append(f"{pad}}}")
    else:
        out.append(f"{pad}}}")
        _render_else(s.other, depth, out)


def _render_if_chain(s: If, depth: int, out: list) -> None:
    pad = INDENT * depth
    if not isinstance(s.then, Block):
        out.append(f"{pad}}}")
        _render_else(s, depth, out)
        return
    out.append(f"{pad}}} else if ({render_expr(s.cond)}) {{")
    for inner in s.then.stmts:
        render_stmt(inner, depth + 1, out)
    if s.other is None:
        out.append(f"{pad}}}")
    elif isinstance(s.other, If):
        _render_if_chain(s.other, depth, out)
    elif isinstance(s.other, Block):
        out.append(f"{pad}}} else {{")
        for inner in s.other.stmts:
            render_stmt(inner, depth + 1, out)
        out.append(f"{pad}}}")
    else:
        out.append(f"{pad}}}")
        _render_else(s.other, depth, out)


def _render_else(other, depth: int, out: list) -> None:
    if isinstance(other, If):
        _render_if(other, depth, out, f"else if ({render_expr(other.cond)})")
    else:
        _body(other, depth, out, "else")


def render_param(p: Param) -> str:
    final = "final " if p.final else ""
    if p.varargs:
        return f"{final}{render_type(p.type)}... {p.name}"
    return f"{final}{render_type(p.type)} {p.name}"


def render_method(m: MethodDecl, depth: int, out: list) -> None:
    pad = INDENT * depth
    head = " ".join(m.modifiers)
    if head:
        head += " "
    if m.return_type is not None:
        head += render_type(m.return_type) + " "
    head += f"{m.name}({', '.join(render_param(p) for p in m.params)})"
    if m.throws:
        head += " throws " + ", ".join(render_type(t) for t in m.throws)
    if m.body is None:
        out.append(f"{pad}{head};")
    elif not m.body.stmts:
        out.append(f"{pad}{head} {{ }}")
    else:
        out.append(f"{pad}{head} {{")
        for s in m.body.stmts:
            render_stmt(s, depth + 1, out)
        out.append(f"{pad}}}")


def render_import(i: Import) -> str:
    return f"import {'static ' if i.static else ''}{i.name}{'.*' if i.wildcard else ''};"


def render_class(c: ClassDecl, depth: int, out: list) -> None:
    pad = INDENT * depth
    head = " ".join(c.modifiers + (c.kind, c.name))
    if c.extends:
        head += " extends " + ", ".join(render_type(t) for t in c.extends)
    if c.implements:
        head += " implements " + ", ".join(render_type(t) for t in c.implements)
    out.append(f"{pad}{head} {{")
    for m in c.members:
        if isinstance(m, FieldDecl):
            mods = " ".join(m.modifiers)
            mods = mods + " " if mods else ""
            out.append(f"{pad}{INDENT}{mods}{render_type(m.type)} {_declarators(m.declarators)};")
        else:
            render_method(m, depth + 1, out)
    out.append(f"{pad}}}")


def render_statements(stmts, depth: int = 0) -> str:
    out: list = []
    for s in stmts:
        render_stmt(s, depth, out)
    return "\n".join(out) + ("\n" if out else "")


def render_snippet(ast: SnippetAst) -> str:
    """Render a whole snippet: package, imports, classes, methods, statements."""
    out: list = []
    if ast.package:
        out.append(f"package {ast.package};")
    out.extend(render_import(i) for i in ast.imports)
    for c in ast.classes:
        render_class(c, 0, out)
    for m in ast.methods:
        render_method(m, 0, out)
    for s in ast.statements:
        render_stmt(s, 0, out)
    return "\n".join(out) + "\n"
