"""Tokenizer for the supported Java subset.

Comments are dropped here, so nothing downstream ever sees them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

KEYWORDS = frozenset(
    """
    abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package private
    protected public return short static strictfp super switch synchronized
    this throw throws transient try void volatile while
    """.split()
)

LITERAL_WORDS = frozenset({"true", "false", "null"})

PRIMITIVES = frozenset({"boolean", "byte", "char", "short", "int", "long", "float", "double"})

# longest operators first
_OPERATORS = [
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&", "||",
    "==", "!=", "<=", ">=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=",
    "<<", ">>",
    "(", ")", "{", "}", "[", "]", ";", ",", ".", "@", "=", ">", "<", "!", "~",
    "?", ":", "+", "-", "*", "/", "&", "|", "^", "%",
]

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\f\r]+)
  | (?P<nl>\n)
  | (?P<line_comment>//[^\n]*)
  | (?P<block_comment>/\*.*?\*/)
  | (?P<unterminated_comment>/\*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<bad_string>")
  | (?P<char>'(?:[^'\\\n]|\\.[^']*)')
  | (?P<float>
        (?:\d[\d_]*\.\d[\d_]*(?:[eE][+-]?\d+)?[fFdD]?)
      | (?:\.\d[\d_]*(?:[eE][+-]?\d+)?[fFdD]?)
      | (?:\d[\d_]*\.(?![\w.])(?:[eE][+-]?\d+)?[fFdD]?)
      | (?:\d[\d_]*[eE][+-]?\d+[fFdD]?)
      | (?:\d[\d_]*[fFdD])
    )
  | (?P<int>0[xX][0-9a-fA-F_]+[lL]?|0[bB][01_]+[lL]?|\d[\d_]*[lL]?)
  | (?P<ident>[A-Za-z_$][A-Za-z0-9_$]*)
  | (?P<op>"""
    + "|".join(re.escape(op) for op in _OPERATORS)
    + r""")
    """,
    re.VERBOSE | re.DOTALL,
)


class LexError(Exception):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Token:
    kind: str  # ident | keyword | int | float | string | char | op | eof
    text: str
    line: int

    def is_op(self, *ops: str) -> bool:
        return self.kind == "op" and self.text in ops

    def is_kw(self, *words: str) -> bool:
        return self.kind == "keyword" and self.text in words


def tokenize(text: str) -> list[Token]:
    """Split ``text`` into tokens, ending with a single ``eof`` token."""
    tokens: list[Token] = []
    line = 1
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise LexError(line, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        value = m.group()
        if kind == "nl":
            line += 1
        elif kind in ("ws", "line_comment"):
            pass
        elif kind == "block_comment":
            line += value.count("\n")
        elif kind == "unterminated_comment":
            raise LexError(line, "unterminated comment")
        elif kind == "bad_string":
            raise LexError(line, "unterminated string literal")
        elif kind == "ident":
            if value in KEYWORDS:
                tokens.append(Token("keyword", value, line))
            elif value in LITERAL_WORDS:
                tokens.append(Token("literal_word", value, line))
            else:
                tokens.append(Token("ident", value, line))
        else:
            tokens.append(Token(kind, value, line))
        pos = m.end()
    tokens.append(Token("eof", "", line))
    return tokens


def tokenize_lines(text: str) -> list[list[Token]]:
    """Tokens grouped by source line, comment-only and blank lines dropped."""
    grouped: dict[int, list[Token]] = {}
    for tok in tokenize(text):
        if tok.kind == "eof":
            break
        grouped.setdefault(tok.line, []).append(tok)
    return [grouped[k] for k in sorted(grouped)]
