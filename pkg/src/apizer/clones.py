"""Alpha-renaming and line-containment clone detection."""

from __future__ import annotations

from collections import Counter
from typing import Optional

from .syntax import parse_snippet, tokenize_lines
from .syntax.nodes import Catch, ForEach, LocalVar, Param, TypeRef

DEFAULT_THRESHOLD = 0.70

_NO_SPACE_BEFORE = frozenset({";", ",", ")", "]", ".", "..."})
_NO_SPACE_AFTER = frozenset({"(", "[", ".", "@", "..."})
_CONTROL = frozenset({"if", "while", "for", "switch", "catch", "synchronized", "return", "throw", "new"})
_STEP = ("++", "--")


def _base_name(t: TypeRef) -> str:
    return t.simple.lower() + "array" * t.dims


def declarations(text: str) -> list[tuple[str, TypeRef]]:
    """Declared variables in source order, with their declared types."""
    ast = parse_snippet(text)
    out: list[tuple[str, TypeRef]] = []
    for node in ast.walk():
        if isinstance(node, LocalVar):
            out.extend((d.name, node.var_type(d)) for d in node.declarators)
        elif isinstance(node, Param):
            out.append((node.name, node.type.with_dims(node.type.dims + node.varargs)))
        elif isinstance(node, ForEach):
            out.append((node.name, node.type))
        elif isinstance(node, Catch):
            out.append((node.name, node.types[0]))
    return out


def renaming(text: str) -> dict[str, str]:
    """Map each variable to its type-based canonical name; first declaration wins."""
    counters: Counter[str] = Counter()
    mapping: dict[str, str] = {}
    for name, t in declarations(text):
        if name in mapping:
            continue
        base = _base_name(t)
        mapping[name] = f"{base}{counters[base]}"
        counters[base] += 1
    return mapping


def _is_operand_end(tok: Optional[str]) -> bool:
    """Whether ``tok`` can end an operand, making a following ``++`` postfix."""
    return tok is not None and (tok in (")", "]") or tok[:1].isalnum() or tok[:1] in "_$\"'") and tok not in _CONTROL


def join_tokens(texts: list[str]) -> str:
    """Render one line of tokens with canonical spacing."""
    out = ""
    prev: Optional[str] = None
    glue = False
    for tok in texts:
        postfix = tok in _STEP and _is_operand_end(prev)
        call = tok in ("(", "[") and _is_operand_end(prev)
        if prev is None or glue or postfix or call or tok in _NO_SPACE_BEFORE or prev in _NO_SPACE_AFTER:
            out += tok
        else:
            out += " " + tok
        glue = (tok in _STEP and not postfix) or (tok in ("-", "+", "!", "~") and not _is_operand_end(prev))
        prev = tok
    return out


def normalized_lines(text: str) -> list[str]:
    """Alpha-renamed source lines with comments, blank lines and layout removed."""
    mapping = renaming(text)
    lines = []
    for toks in tokenize_lines(text):
        texts = []
        for i, tok in enumerate(toks):
            t = tok.text
            if tok.kind == "ident" and t in mapping:
                after_dot = i > 0 and toks[i - 1].is_op(".")
                is_call = i + 1 < len(toks) and toks[i + 1].is_op("(")
                if not after_dot and not is_call:
                    t = mapping[t]
            texts.append(t)
        if texts:
            lines.append(join_tokens(texts))
    return lines


def alpha_rename(text: str) -> str:
    return "\n".join(normalized_lines(text))


def type3_containment(cs: str, method: str, threshold: float = DEFAULT_THRESHOLD) -> tuple[float, bool]:
    """Fraction of ``cs`` lines found in ``method`` (as a multiset) and the clone verdict."""
    cs_lines = normalized_lines(cs)
    if not cs_lines:
        return 0.0, False
    pool = Counter(normalized_lines(method))
    matched = 0
    for line in cs_lines:
        if pool[line] > 0:
            pool[line] -= 1
            matched += 1
    ratio = matched / len(cs_lines)
    return ratio, ratio >= threshold
