from .lexer import LexError, Token, tokenize, tokenize_lines
from .parser import ParseError, parse_expression, parse_snippet, parse_statements
from .printer import render_expr, render_snippet, render_statements, render_type

__all__ = [
    "LexError", "ParseError", "Token", "parse_expression", "parse_snippet",
    "parse_statements", "render_expr", "render_snippet", "render_statements",
    "render_type", "tokenize", "tokenize_lines",
]
