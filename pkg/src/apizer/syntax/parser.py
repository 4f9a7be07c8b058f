"""Recursive-descent parser for Java snippets.

Accepts dangling statements, top-level method declarations and single-level
class declarations. Lambdas, annotations, inner/anonymous/local classes,
enums and generic method declarations are rejected with :class:`ParseError`.
"""

from __future__ import annotations

from typing import Optional

from .lexer import PRIMITIVES, LexError, Token, tokenize
from .nodes import (
    ArrayAccess, ArrayInit, Assign, Binary, Block, Break, Cast, Catch, ClassDecl,
    ClassLit, Conditional, Continue, Declarator, DoWhile, Empty, ExprStmt,
    FieldAccess, FieldDecl, For, ForEach, If, Import, InstanceOf, Literal,
    LocalVar, MethodCall, MethodDecl, Name, New, NewArray, Param, Paren, Return,
    SnippetAst, Switch, SwitchCase, This, Throw, Try, TypeRef, Unary, While,
    Wildcard,
)


class ParseError(Exception):
    """Raised when the text falls outside the supported grammar."""

    def __init__(self, line: int, message: str = "syntax error"):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


class _Backtrack(Exception):
    pass


MODIFIERS = frozenset(
    {"public", "private", "protected", "static", "final", "abstract",
     "synchronized", "native", "transient", "volatile", "strictfp"}
)

ASSIGN_OPS = frozenset({"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>="})

_BINARY_LEVELS = [
    ("||",),
    ("&&",),
    ("|",),
    ("^",),
    ("&",),
    ("==", "!="),
    ("<", ">", "<=", ">="),  # plus instanceof
    ("<<", ">>", ">>>"),
    ("+", "-"),
    ("*", "/", "%"),
]

_UNSUPPORTED_OPS = {"->": "lambda expressions", "::": "method references", "@": "annotations"}


class Parser:
    def __init__(self, text: str):
        try:
            self.tokens = tokenize(text)
        except LexError as exc:
            raise ParseError(exc.line, str(exc)) from None
        self.pos = 0
        # number of '>' already consumed from a '>>' / '>>>' token
        self.split = 0
        self.last_line = 1

    # -------------------------------------------------------------- token helpers

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
            self.last_line = tok.line
        self.split = 0
        return tok

    def error(self, message: str = "syntax error", tok: Optional[Token] = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(tok.line, message)

    def check_unsupported(self) -> None:
        tok = self.tok
        if tok.kind == "op" and tok.text in _UNSUPPORTED_OPS:
            raise self.error(f"unsupported syntax: {_UNSUPPORTED_OPS[tok.text]}")
        if tok.is_kw("enum"):
            raise self.error("unsupported syntax: enums")

    def expect_op(self, op: str) -> Token:
        if not self.tok.is_op(op):
            self.check_unsupported()
            raise self.error(f"expected {op!r} but found {self.tok.text or 'end of input'!r}")
        return self.advance()

    def expect_kw(self, word: str) -> Token:
        if not self.tok.is_kw(word):
            raise self.error(f"expected {word!r}")
        return self.advance()

    def expect_ident(self) -> str:
        if self.tok.kind != "ident":
            self.check_unsupported()
            raise self.error(f"expected identifier but found {self.tok.text or 'end of input'!r}")
        return self.advance().text

    def accept_op(self, op: str) -> bool:
        if self.tok.is_op(op):
            self.advance()
            return True
        return False

    def mark(self) -> tuple:
        return (self.pos, self.split, self.last_line)

    def reset(self, state: tuple) -> None:
        self.pos, self.split, self.last_line = state

    # -------------------------------------------------------------- compilation unit

    def parse_snippet(self) -> SnippetAst:
        statements, spans, imports, methods, classes = [], [], [], [], []
        package = ""
        if self.tok.kind == "eof":
            raise self.error("empty snippet")
        while self.tok.kind != "eof":
            tok = self.tok
            if tok.is_kw("package"):
                self.advance()
                package = self.qualified_name()
                self.expect_op(";")
            elif tok.is_kw("import"):
                imports.append(self.import_decl())
            elif tok.is_op("@"):
                raise self.error("unsupported syntax: annotations")
            elif self._at_class_decl():
                classes.append(self.class_decl())
            else:
                method = self.try_method_decl()
                if method is not None:
                    methods.append(method)
                    continue
                start = tok.line
                statements.append(self.statement())
                spans.append((start, self.last_line))
        return SnippetAst(
            statements=tuple(statements),
            imports=tuple(imports),
            methods=tuple(methods),
            classes=tuple(classes),
            package=package,
            spans=tuple(spans),
        )

    def qualified_name(self) -> str:
        parts = [self.expect_ident()]
        while self.tok.is_op(".") and self.peek().kind == "ident":
            self.advance()
            parts.append(self.advance().text)
        return ".".join(parts)

    def import_decl(self) -> Import:
        line = self.expect_kw("import").line
        static = False
        if self.tok.is_kw("static"):
            self.advance()
            static = True
        name = self.qualified_name()
        wildcard = False
        if self.tok.is_op("."):
            self.advance()
            self.expect_op("*")
            wildcard = True
        self.expect_op(";")
        return Import(name, static=static, wildcard=wildcard, line=line)

    def _at_class_decl(self) -> bool:
        k = 0
        while True:
            tok = self.peek(k)
            if tok.kind == "keyword" and tok.text in MODIFIERS:
                k += 1
                continue
            if tok.is_kw("enum"):
                raise ParseError(tok.line, "unsupported syntax: enums")
            if tok.is_op("@"):
                raise ParseError(tok.line, "unsupported syntax: annotations")
            return tok.is_kw("class", "interface")

    def modifiers(self) -> tuple:
        mods = []
        while self.tok.kind == "keyword" and self.tok.text in MODIFIERS:
            mods.append(self.advance().text)
        if self.tok.is_op("@"):
            raise self.error("unsupported syntax: annotations")
        return tuple(mods)

    def class_decl(self) -> ClassDecl:
        line = self.tok.line
        mods = self.modifiers()
        kind = self.advance().text
        name = self.expect_ident()
        if self.tok.is_op("<"):
            raise self.error("unsupported syntax: generic class declarations")
        extends, implements = [], []
        if self.tok.is_kw("extends"):
            self.advance()
            extends.append(self.type_ref())
            while self.accept_op(","):
                extends.append(self.type_ref())
        if self.tok.is_kw("implements"):
            self.advance()
            implements.append(self.type_ref())
            while self.accept_op(","):
                implements.append(self.type_ref())
        self.expect_op("{")
        members = []
        while not self.tok.is_op("}"):
            if self.tok.kind == "eof":
                raise self.error("unterminated class body")
            if self.accept_op(";"):
                continue
            if self._at_class_decl():
                raise self.error("unsupported syntax: nested classes")
            if self.tok.is_op("{") or (self.tok.is_kw("static") and self.peek().is_op("{")):
                raise self.error("unsupported syntax: initializer blocks")
            method = self.try_method_decl(class_name=name)
            if method is not None:
                members.append(method)
                continue
            members.append(self.field_decl())
        self.expect_op("}")
        return ClassDecl(mods, kind, name, tuple(extends), tuple(implements), tuple(members), line=line)

    def field_decl(self) -> FieldDecl:
        line = self.tok.line
        mods = self.modifiers()
        type_ = self.type_ref()
        declarators = self.declarators()
        self.expect_op(";")
        return FieldDecl(mods, type_, declarators, line=line)

    def try_method_decl(self, class_name: Optional[str] = None) -> Optional[MethodDecl]:
        """Parse a method declaration if one starts here, else rewind and return None."""
        state = self.mark()
        line = self.tok.line
        mods = self.modifiers()
        if self.tok.is_op("<"):
            raise self.error("unsupported syntax: generic methods")
        return_type: Optional[TypeRef]
        if (class_name is not None and self.tok.kind == "ident" and self.tok.text == class_name
                and self.peek().is_op("(")):
            return_type = None
        elif self.tok.is_kw("void"):
            self.advance()
            return_type = TypeRef("void")
        else:
            try:
                return_type = self.type_ref()
            except ParseError:
                self.reset(state)
                return None
        if not (self.tok.kind == "ident" and self.peek().is_op("(")):
            self.reset(state)
            return None
        name = self.advance().text
        self.expect_op("(")
        params = []
        if not self.tok.is_op(")"):
            params.append(self.param())
            while self.accept_op(","):
                params.append(self.param())
        self.expect_op(")")
        throws = []
        if self.tok.is_kw("throws"):
            self.advance()
            throws.append(self.type_ref())
            while self.accept_op(","):
                throws.append(self.type_ref())
        body = None
        if self.tok.is_op("{"):
            body = self.block()
        else:
            self.expect_op(";")
        return MethodDecl(mods, return_type, name, tuple(params), tuple(throws), body, line=line)

    def param(self) -> Param:
        final = False
        while self.tok.is_kw("final"):
            self.advance()
            final = True
        if self.tok.is_op("@"):
            raise self.error("unsupported syntax: annotations")
        type_ = self.type_ref()
        varargs = self.accept_op("...")
        name = self.expect_ident()
        dims = self.dims()
        if dims:
            type_ = type_.with_dims(type_.dims + dims)
        return Param(type_, name, varargs=varargs, final=final)

    # -------------------------------------------------------------- types

    def type_ref(self, allow_diamond: bool = False) -> TypeRef:
        tok = self.tok
        if tok.kind == "keyword" and tok.text in PRIMITIVES:
            self.advance()
            return TypeRef(tok.text, dims=self.dims())
        if tok.kind != "ident":
            raise self.error("expected type")
        name = self.qualified_name()
        args: tuple = ()
        diamond = False
        if self.tok.is_op("<"):
            self.advance()
            if self.tok.is_op(">") and allow_diamond:
                self.advance()
                diamond = True
            else:
                items = [self.type_arg(depth=1)]
                while self.accept_op(","):
                    items.append(self.type_arg(depth=1))
                self.close_angle()
                args = tuple(items)
        # qualified type after generic args (Map.Entry<..>) is not supported
        return TypeRef(name, args=args, dims=self.dims(), diamond=diamond)

    def type_arg(self, depth: int):
        if self.tok.is_op("?"):
            self.advance()
            if self.tok.is_kw("extends", "super"):
                kind = self.advance().text
                bound = self.type_ref()
                if any(isinstance(a, Wildcard) for a in bound.args):
                    raise self.error("unsupported syntax: nested wildcards")
                return Wildcard(kind, bound)
            return Wildcard()
        t = self.type_ref()
        return t

    def close_angle(self) -> None:
        tok = self.tok
        if tok.is_op(">"):
            self.advance()
        elif tok.is_op(">>", ">>>"):
            width = len(tok.text)
            self.split += 1
            if self.split == width:
                self.advance()
        else:
            raise self.error("expected '>'")

    def dims(self) -> int:
        n = 0
        while self.tok.is_op("[") and self.peek().is_op("]"):
            self.advance()
            self.advance()
            n += 1
        return n

    def _looks_like_local_var(self) -> bool:
        """Speculatively check for ``Type ident`` at the current position."""
        tok = self.tok
        if tok.kind == "keyword" and tok.text in PRIMITIVES:
            return True
        if tok.kind != "ident":
            return False
        state = self.mark()
        try:
            self.type_ref()
            if self.split:
                return False
            return self.tok.kind == "ident" and (
                self.peek().is_op("=", ";", ",", "[", ":")
            )
        except ParseError:
            return False
        finally:
            self.reset(state)

    # -------------------------------------------------------------- statements

    def block(self) -> Block:
        line = self.expect_op("{").line
        stmts = []
        while not self.tok.is_op("}"):
            if self.tok.kind == "eof":
                raise self.error("unterminated block")
            stmts.append(self.statement())
        self.advance()
        return Block(tuple(stmts), line=line)

    def statement(self):
        tok = self.tok
        line = tok.line
        if tok.is_op("{"):
            return self.block()
        if tok.is_op(";"):
            self.advance()
            return Empty(line=line)
        if tok.kind == "keyword":
            word = tok.text
            if word == "if":
                self.advance()
                cond = self.paren_expr()
                then = self.statement()
                other = None
                if self.tok.is_kw("else"):
                    self.advance()
                    other = self.statement()
                return If(cond, then, other, line=line)
            if word == "while":
                self.advance()
                cond = self.paren_expr()
                return While(cond, self.statement(), line=line)
            if word == "do":
                self.advance()
                body = self.statement()
                self.expect_kw("while")
                cond = self.paren_expr()
                self.expect_op(";")
                return DoWhile(body, cond, line=line)
            if word == "for":
                return self.for_stmt()
            if word == "try":
                return self.try_stmt()
            if word == "return":
                self.advance()
                expr = None if self.tok.is_op(";") else self.expression()
                self.expect_op(";")
                return Return(expr, line=line)
            if word in ("break", "continue"):
                self.advance()
                label = self.advance().text if self.tok.kind == "ident" else ""
                self.expect_op(";")
                return Break(label, line=line) if word == "break" else Continue(label, line=line)
            if word == "throw":
                self.advance()
                expr = self.expression()
                self.expect_op(";")
                return Throw(expr, line=line)
            if word == "switch":
                return self.switch_stmt()
            if word in ("class", "interface", "abstract", "static", "public", "private", "protected"):
                raise self.error("unsupported syntax: local class or member declaration")
            if word == "final":
                self.advance()
                var = self.local_var(final=True, line=line)
                self.expect_op(";")
                return var
            if word == "synchronized" or word == "assert":
                raise self.error(f"unsupported syntax: {word} statement")
        if tok.is_op("@"):
            raise self.error("unsupported syntax: annotations")
        if tok.kind == "ident" and self.peek().is_op(":"):
            raise self.error("unsupported syntax: labeled statements")
        if self._looks_like_local_var():
            var = self.local_var(line=line)
            self.expect_op(";")
            return var
        expr = self.expression()
        self.expect_op(";")
        return ExprStmt(expr, line=line)

    def local_var(self, final: bool = False, line: int = 0) -> LocalVar:
        type_ = self.type_ref()
        return LocalVar(type_, self.declarators(), final=final, line=line)

    def declarators(self) -> tuple:
        out = []
        while True:
            name = self.expect_ident()
            dims = self.dims()
            init = None
            if self.accept_op("="):
                init = self.array_init() if self.tok.is_op("{") else self.expression()
            out.append(Declarator(name, dims, init))
            if not self.accept_op(","):
                return tuple(out)

    def array_init(self) -> ArrayInit:
        line = self.expect_op("{").line
        elements = []
        while not self.tok.is_op("}"):
            elements.append(self.array_init() if self.tok.is_op("{") else self.expression())
            if not self.accept_op(","):
                break
        self.expect_op("}")
        return ArrayInit(tuple(elements), line=line)

    def paren_expr(self):
        self.expect_op("(")
        expr = self.expression()
        self.expect_op(")")
        return expr

    def for_stmt(self):
        line = self.expect_kw("for").line
        self.expect_op("(")
        # enhanced for
        state = self.mark()
        final = False
        while self.tok.is_kw("final"):
            self.advance()
            final = True
        if final or self._looks_like_local_var():
            type_ = self.type_ref()
            name = self.expect_ident()
            if self.accept_op(":"):
                iterable = self.expression()
                self.expect_op(")")
                return ForEach(type_, name, iterable, self.statement(), final=final, line=line)
            self.reset(state)
        init: list = []
        if not self.tok.is_op(";"):
            final = False
            while self.tok.is_kw("final"):
                self.advance()
                final = True
            if final or self._looks_like_local_var():
                init.append(self.local_var(final=final, line=line))
            else:
                init.append(ExprStmt(self.expression(), line=line))
                while self.accept_op(","):
                    init.append(ExprStmt(self.expression(), line=line))
        self.expect_op(";")
        cond = None if self.tok.is_op(";") else self.expression()
        self.expect_op(";")
        update = []
        if not self.tok.is_op(")"):
            update.append(self.expression())
            while self.accept_op(","):
                update.append(self.expression())
        self.expect_op(")")
        return For(tuple(init), cond, tuple(update), self.statement(), line=line)

    def try_stmt(self):
        line = self.expect_kw("try").line
        resources = []
        if self.accept_op("("):
            while not self.tok.is_op(")"):
                final = False
                while self.tok.is_kw("final"):
                    self.advance()
                    final = True
                rline = self.tok.line
                type_ = self.type_ref()
                name = self.expect_ident()
                self.expect_op("=")
                init = self.expression()
                resources.append(LocalVar(type_, (Declarator(name, 0, init),), final=final, line=rline))
                if not self.accept_op(";"):
                    break
            self.expect_op(")")
        body = self.block()
        catches = []
        while self.tok.is_kw("catch"):
            cline = self.advance().line
            self.expect_op("(")
            while self.tok.is_kw("final"):
                self.advance()
            types = [self.type_ref()]
            while self.accept_op("|"):
                types.append(self.type_ref())
            name = self.expect_ident()
            self.expect_op(")")
            catches.append(Catch(tuple(types), name, self.block(), line=cline))
        finally_ = None
        if self.tok.is_kw("finally"):
            self.advance()
            finally_ = self.block()
        if not catches and finally_ is None and not resources:
            raise self.error("try without catch or finally")
        return Try(body, tuple(catches), finally_, tuple(resources), line=line)

    def switch_stmt(self):
        line = self.expect_kw("switch").line
        expr = self.paren_expr()
        self.expect_op("{")
        cases = []
        while not self.tok.is_op("}"):
            cline = self.tok.line
            labels = []
            if self.tok.is_kw("default"):
                self.advance()
                self.expect_op(":")
            elif self.tok.is_kw("case"):
                self.advance()
                labels.append(self.ternary())
                self.expect_op(":")
            else:
                raise self.error("expected 'case' or 'default'")
            body = []
            while not (self.tok.is_kw("case", "default") or self.tok.is_op("}")):
                if self.tok.kind == "eof":
                    raise self.error("unterminated switch")
                body.append(self.statement())
            cases.append(SwitchCase(tuple(labels), tuple(body), line=cline))
        self.advance()
        return Switch(expr, tuple(cases), line=line)

    # -------------------------------------------------------------- expressions

    def expression(self):
        target = self.ternary()
        tok = self.tok
        if tok.kind == "op" and tok.text in ASSIGN_OPS:
            if not isinstance(target, (Name, FieldAccess, ArrayAccess)):
                raise self.error("invalid assignment target")
            self.advance()
            value = self.array_init() if self.tok.is_op("{") else self.expression()
            return Assign(tok.text, target, value, line=target.line or tok.line)
        self.check_unsupported()
        return target

    def ternary(self):
        cond = self.binary(0)
        if self.tok.is_op("?"):
            line = self.advance().line
            then = self.expression()
            self.expect_op(":")
            other = self.ternary_or_assign()
            return Conditional(cond, then, other, line=line)
        return cond

    def ternary_or_assign(self):
        return self.ternary()

    def binary(self, level: int):
        if level == len(_BINARY_LEVELS):
            return self.unary()
        ops = _BINARY_LEVELS[level]
        left = self.binary(level + 1)
        while True:
            tok = self.tok
            if self.split:
                break
            if tok.kind == "op" and tok.text in ops:
                self.advance()
                right = self.binary(level + 1)
                left = Binary(tok.text, left, right, line=tok.line)
            elif level == 6 and tok.is_kw("instanceof"):
                self.advance()
                left = InstanceOf(left, self.type_ref(), line=tok.line)
            else:
                break
        return left

    def unary(self):
        tok = self.tok
        if tok.kind == "op" and tok.text in ("++", "--", "+", "-", "!", "~"):
            self.advance()
            operand = self.unary()
            return Unary(tok.text, operand, line=tok.line)
        if tok.is_op("("):
            cast = self.try_cast()
            if cast is not None:
                return cast
        return self.postfix(self.primary())

    def try_cast(self):
        state = self.mark()
        line = self.advance().line
        try:
            nxt = self.tok
            if not (nxt.kind == "ident" or (nxt.kind == "keyword" and nxt.text in PRIMITIVES)):
                raise _Backtrack
            type_ = self.type_ref()
            if not self.tok.is_op(")"):
                raise _Backtrack
            self.advance()
            after = self.tok
            primitive = type_.name in PRIMITIVES and not type_.dims
            starts_operand = (
                after.kind in ("ident", "int", "float", "string", "char", "literal_word")
                or after.is_op("(", "!", "~")
                or after.is_kw("new", "this", "super")
                or (after.kind == "keyword" and after.text in PRIMITIVES)
            )
            if primitive and after.is_op("+", "-", "++", "--"):
                starts_operand = True
            if not starts_operand:
                raise _Backtrack
        except (_Backtrack, ParseError):
            self.reset(state)
            return None
        return Cast(type_, self.unary(), line=line)

    def postfix(self, expr):
        while True:
            tok = self.tok
            if tok.is_op("."):
                self.advance()
                if self.tok.is_kw("class"):
                    raise self.error("unsupported syntax: class literal on expression")
                if self.tok.is_op("<"):
                    raise self.error("unsupported syntax: explicit generic invocation")
                if self.tok.is_kw("new"):
                    raise self.error("unsupported syntax: inner class creation")
                name = self.expect_ident()
                if self.tok.is_op("("):
                    expr = MethodCall(expr, name, self.arguments(), line=tok.line)
                else:
                    expr = FieldAccess(expr, name, line=tok.line)
            elif tok.is_op("["):
                self.advance()
                index = self.expression()
                self.expect_op("]")
                expr = ArrayAccess(expr, index, line=tok.line)
            elif tok.is_op("++", "--"):
                self.advance()
                expr = Unary(tok.text, expr, postfix=True, line=tok.line)
            else:
                self.check_unsupported()
                return expr

    def arguments(self) -> tuple:
        self.expect_op("(")
        args = []
        if not self.tok.is_op(")"):
            args.append(self.expression())
            while self.accept_op(","):
                args.append(self.expression())
        self.expect_op(")")
        return tuple(args)

    def primary(self):
        tok = self.tok
        line = tok.line
        kind = tok.kind
        if kind == "int":
            self.advance()
            return Literal("long" if tok.text[-1] in "lL" else "int", tok.text, line=line)
        if kind == "float":
            self.advance()
            return Literal("float" if tok.text[-1] in "fF" else "double", tok.text, line=line)
        if kind == "string":
            self.advance()
            return Literal("string", tok.text, line=line)
        if kind == "char":
            self.advance()
            return Literal("char", tok.text, line=line)
        if kind == "literal_word":
            self.advance()
            return Literal("null" if tok.text == "null" else "boolean", tok.text, line=line)
        if tok.is_op("("):
            self.advance()
            inner = self.expression()
            self.expect_op(")")
            return Paren(inner, line=line)
        if kind == "ident":
            # Type.class / Type[].class
            if self._at_class_literal():
                type_ = self.type_ref()
                self.expect_op(".")
                self.expect_kw("class")
                return ClassLit(type_, line=line)
            self.advance()
            if self.tok.is_op("("):
                return MethodCall(None, tok.text, self.arguments(), line=line)
            return Name(tok.text, line=line)
        if kind == "keyword":
            if tok.text == "this":
                self.advance()
                if self.tok.is_op("("):
                    raise self.error("unsupported syntax: constructor call")
                return This(line=line)
            if tok.text == "new":
                return self.creation()
            if tok.text in PRIMITIVES or tok.text == "void":
                if self.peek().is_op(".", "["):
                    type_ = TypeRef(self.advance().text, dims=self.dims())
                    self.expect_op(".")
                    self.expect_kw("class")
                    return ClassLit(type_, line=line)
            if tok.text == "super":
                raise self.error("unsupported syntax: super")
        self.check_unsupported()
        raise self.error(f"unexpected token {tok.text or 'end of input'!r}")

    def _at_class_literal(self) -> bool:
        k = 0
        while True:
            if self.peek(k).kind != "ident":
                return False
            k += 1
            while self.peek(k).is_op("[") and self.peek(k + 1).is_op("]"):
                k += 2
            if self.peek(k).is_op(".") and self.peek(k + 1).is_kw("class"):
                return True
            if self.peek(k).is_op(".") and self.peek(k + 1).kind == "ident":
                k += 1
                continue
            return False

    def creation(self):
        line = self.expect_kw("new").line
        tok = self.tok
        if tok.kind == "keyword" and tok.text in PRIMITIVES:
            type_ = TypeRef(self.advance().text)
        else:
            type_ = self.type_ref(allow_diamond=True)
            if type_.dims:
                # new Foo[] {..}
                init = self.array_init()
                return NewArray(type_.element(), (), type_.dims, init, line=line)
        if self.tok.is_op("["):
            dim_exprs = []
            extra = 0
            while self.tok.is_op("["):
                self.advance()
                if self.tok.is_op("]"):
                    self.advance()
                    extra += 1
                    continue
                if extra:
                    raise self.error("array dimension after empty dimension")
                dim_exprs.append(self.expression())
                self.expect_op("]")
            init = None
            if self.tok.is_op("{"):
                if dim_exprs:
                    raise self.error("array initializer with sized dimension")
                init = self.array_init()
            elif not dim_exprs:
                raise self.error("array creation without dimension or initializer")
            return NewArray(type_, tuple(dim_exprs), extra, init, line=line)
        if type_.name in PRIMITIVES:
            raise self.error("cannot instantiate primitive type")
        args = self.arguments()
        if self.tok.is_op("{"):
            raise self.error("unsupported syntax: anonymous classes")
        return New(type_, args, line=line)


def parse_snippet(text: str) -> SnippetAst:
    """Parse ``text`` into a :class:`SnippetAst`."""
    if not text or not text.strip():
        raise ParseError(1, "empty snippet")
    return Parser(text).parse_snippet()


def parse_expression(text: str):
    parser = Parser(text)
    expr = parser.expression()
    if parser.tok.kind != "eof":
        raise parser.error("trailing input after expression")
    return expr


def parse_statements(text: str) -> tuple:
    return parse_snippet(text).statements
