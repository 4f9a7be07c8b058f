"""AST node classes for the supported Java subset.

Nodes are frozen dataclasses; source lines are carried in ``line`` fields that
are excluded from equality, so two trees compare equal iff they have the same
structure regardless of layout.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from typing import Iterator, Optional, Union


def _line() -> int:
    return field(default=0, compare=False, repr=False)


class Node:
    def children(self) -> Iterator["Node"]:
        for f in fields(self):
            if f.name == "line":
                continue
            value = getattr(self, f.name)
            if isinstance(value, Node):
                yield value
            elif isinstance(value, tuple):
                for item in value:
                    if isinstance(item, Node):
                        yield item

    def walk(self) -> Iterator["Node"]:
        """Pre-order traversal including ``self``."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(list(node.children())))


# ---------------------------------------------------------------- types


@dataclass(frozen=True)
class Wildcard(Node):
    bound_kind: str = ""  # "", "extends", "super"
    bound: Optional["TypeRef"] = None


@dataclass(frozen=True)
class TypeRef(Node):
    name: str  # simple or dotted name, or a primitive / void
    args: tuple = ()  # TypeRef | Wildcard
    dims: int = 0
    diamond: bool = False

    @property
    def simple(self) -> str:
        return self.name.rsplit(".", 1)[-1]

    def element(self) -> "TypeRef":
        return replace(self, dims=0)

    def with_dims(self, dims: int) -> "TypeRef":
        return replace(self, dims=dims)


# ---------------------------------------------------------------- expressions


@dataclass(frozen=True)
class Literal(Node):
    kind: str  # int long float double char string boolean null
    text: str
    line: int = _line()


@dataclass(frozen=True)
class Name(Node):
    id: str
    line: int = _line()


@dataclass(frozen=True)
class This(Node):
    line: int = _line()


@dataclass(frozen=True)
class FieldAccess(Node):
    target: "Expr"
    name: str
    line: int = _line()


@dataclass(frozen=True)
class MethodCall(Node):
    target: Optional["Expr"]
    name: str
    args: tuple = ()
    line: int = _line()


@dataclass(frozen=True)
class New(Node):
    type: TypeRef
    args: tuple = ()
    line: int = _line()


@dataclass(frozen=True)
class ArrayInit(Node):
    elements: tuple = ()
    line: int = _line()


@dataclass(frozen=True)
class NewArray(Node):
    type: TypeRef  # element type, dims == 0
    dim_exprs: tuple = ()  # sized dimensions
    extra_dims: int = 0  # trailing []
    init: Optional[ArrayInit] = None
    line: int = _line()

    @property
    def total_dims(self) -> int:
        return len(self.dim_exprs) + self.extra_dims


@dataclass(frozen=True)
class ArrayAccess(Node):
    array: "Expr"
    index: "Expr"
    line: int = _line()


@dataclass(frozen=True)
class Unary(Node):
    op: str
    operand: "Expr"
    postfix: bool = False
    line: int = _line()


@dataclass(frozen=True)
class Binary(Node):
    op: str
    left: "Expr"
    right: "Expr"
    line: int = _line()


@dataclass(frozen=True)
class Conditional(Node):
    cond: "Expr"
    then: "Expr"
    other: "Expr"
    line: int = _line()


@dataclass(frozen=True)
class Assign(Node):
    op: str  # "=", "+=", ...
    target: "Expr"
    value: "Expr"
    line: int = _line()


@dataclass(frozen=True)
class Cast(Node):
    type: TypeRef
    expr: "Expr"
    line: int = _line()


@dataclass(frozen=True)
class InstanceOf(Node):
    expr: "Expr"
    type: TypeRef
    line: int = _line()


@dataclass(frozen=True)
class Paren(Node):
    expr: "Expr"
    line: int = _line()


@dataclass(frozen=True)
class ClassLit(Node):
    type: TypeRef
    line: int = _line()


Expr = Union[
    Literal, Name, This, FieldAccess, MethodCall, New, ArrayInit, NewArray,
    ArrayAccess, Unary, Binary, Conditional, Assign, Cast, InstanceOf, Paren,
    ClassLit,
]


# ---------------------------------------------------------------- statements


@dataclass(frozen=True)
class Declarator(Node):
    name: str
    dims: int = 0
    init: Optional[Expr] = None


@dataclass(frozen=True)
class LocalVar(Node):
    type: TypeRef
    declarators: tuple  # Declarator
    final: bool = False
    line: int = _line()

    def var_type(self, declarator: Declarator) -> TypeRef:
        if declarator.dims:
            return self.type.with_dims(self.type.dims + declarator.dims)
        return self.type


@dataclass(frozen=True)
class ExprStmt(Node):
    expr: Expr
    line: int = _line()


@dataclass(frozen=True)
class Block(Node):
    stmts: tuple = ()
    line: int = _line()


@dataclass(frozen=True)
class If(Node):
    cond: Expr
    then: "Stmt"
    other: Optional["Stmt"] = None
    line: int = _line()


@dataclass(frozen=True)
class While(Node):
    cond: Expr
    body: "Stmt"
    line: int = _line()


@dataclass(frozen=True)
class DoWhile(Node):
    body: "Stmt"
    cond: Expr
    line: int = _line()


@dataclass(frozen=True)
class For(Node):
    init: tuple  # LocalVar or ExprStmt items
    cond: Optional[Expr]
    update: tuple  # Expr
    body: "Stmt"
    line: int = _line()


@dataclass(frozen=True)
class ForEach(Node):
    type: TypeRef
    name: str
    iterable: Expr
    body: "Stmt"
    final: bool = False
    line: int = _line()


@dataclass(frozen=True)
class Catch(Node):
    types: tuple  # TypeRef, multi-catch alternatives
    name: str
    body: Block
    line: int = _line()


@dataclass(frozen=True)
class Try(Node):
    body: Block
    catches: tuple = ()
    finally_: Optional[Block] = None
    resources: tuple = ()  # LocalVar
    line: int = _line()


@dataclass(frozen=True)
class Return(Node):
    expr: Optional[Expr] = None
    line: int = _line()


@dataclass(frozen=True)
class Break(Node):
    label: str = ""
    line: int = _line()


@dataclass(frozen=True)
class Continue(Node):
    label: str = ""
    line: int = _line()


@dataclass(frozen=True)
class Throw(Node):
    expr: Expr
    line: int = _line()


@dataclass(frozen=True)
class SwitchCase(Node):
    labels: tuple  # Expr; empty tuple means "default"
    body: tuple  # Stmt
    line: int = _line()


@dataclass(frozen=True)
class Switch(Node):
    expr: Expr
    cases: tuple = ()
    line: int = _line()


@dataclass(frozen=True)
class Empty(Node):
    line: int = _line()


Stmt = Union[
    LocalVar, ExprStmt, Block, If, While, DoWhile, For, ForEach, Try, Return,
    Break, Continue, Throw, Switch, Empty,
]

LOOPS = (While, DoWhile, For, ForEach)


# ---------------------------------------------------------------- declarations


@dataclass(frozen=True)
class Import(Node):
    name: str
    static: bool = False
    wildcard: bool = False
    line: int = _line()


@dataclass(frozen=True)
class Param(Node):
    type: TypeRef
    name: str
    varargs: bool = False
    final: bool = False


@dataclass(frozen=True)
class MethodDecl(Node):
    modifiers: tuple  # str
    return_type: Optional[TypeRef]  # None for constructors
    name: str
    params: tuple = ()
    throws: tuple = ()  # TypeRef
    body: Optional[Block] = None  # None for abstract / interface methods
    line: int = _line()

    @property
    def is_constructor(self) -> bool:
        return self.return_type is None


@dataclass(frozen=True)
class FieldDecl(Node):
    modifiers: tuple
    type: TypeRef
    declarators: tuple
    line: int = _line()


@dataclass(frozen=True)
class ClassDecl(Node):
    modifiers: tuple
    kind: str  # class | interface
    name: str
    extends: tuple = ()
    implements: tuple = ()
    members: tuple = ()  # MethodDecl | FieldDecl
    line: int = _line()

    @property
    def methods(self) -> tuple:
        return tuple(m for m in self.members if isinstance(m, MethodDecl))

    @property
    def fields(self) -> tuple:
        return tuple(m for m in self.members if isinstance(m, FieldDecl))


@dataclass(frozen=True)
class SnippetAst(Node):
    """A parsed snippet.

    ``statements`` are the dangling top-level statements in source order;
    ``methods`` and ``classes`` hold top-level declarations, if any.
    """

    statements: tuple = ()
    imports: tuple = ()
    methods: tuple = ()
    classes: tuple = ()
    package: str = ""
    comments_stripped: bool = field(default=True, compare=False)
    spans: tuple = field(default=(), compare=False, repr=False)  # (first, last) line per statement
