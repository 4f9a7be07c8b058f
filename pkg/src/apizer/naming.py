"""Method names from question titles: main verb plus its direct object."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional

INTERROGATIVE_PREFIX = frozenset({
    "how", "to", "do", "does", "can", "could", "i", "you", "we", "in", "java",
    "what", "is", "the", "best", "way", "should", "would",
})
STOPWORDS = frozenset({
    "a", "an", "the", "my", "your", "our", "their", "his", "her", "this", "that",
    "these", "those", "some", "any", "all", "each", "every", "it", "its", "is",
    "are", "be", "been", "was", "were", "and", "or", "but", "not", "java", "me",
    "i", "you", "we", "they", "one", "if", "when", "where", "which", "while",
    "so", "just", "only", "also", "then", "there", "here", "correctly",
    "properly", "easily", "quickly", "programmatically", "efficiently",
})
CONJUNCTIONS = frozenset({"and", "or"})
PREPOSITIONS = frozenset({
    "to", "from", "in", "into", "on", "onto", "at", "by", "for", "with",
    "without", "of", "about", "over", "under", "between", "through", "using",
    "via", "as", "than", "within", "across", "per", "after", "before",
    "during", "inside", "outside", "like",
})
ADJECTIVES = frozenset({
    "first", "last", "next", "previous", "current", "new", "old", "all",
    "random", "unique", "empty", "whole", "entire", "specific", "given",
    "multiple", "single", "nth", "largest", "smallest", "max", "min",
})
_WORD = re.compile(r"[A-Za-z][A-Za-z0-9]*")


@dataclass(frozen=True)
class SoPage:
    title: str = ""
    url: str = ""
    answer_id: int = 0
    question_id: int = 0

    def javadoc(self) -> str:
        lines = [self.title.strip()] if self.title.strip() else []
        if self.url:
            lines.append(f"@see {self.url}")
        return "\n".join(lines)


def load_lexicon(path: Optional[str | Path] = None) -> frozenset[str]:
    if path is None:
        text = (resources.files("apizer") / "data" / "verbs.txt").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return frozenset(w.strip().lower() for w in text.splitlines() if w.strip() and not w.startswith("#"))


@lru_cache(maxsize=1)
def default_lexicon() -> frozenset[str]:
    return load_lexicon()


def _verb_stem(word: str, lexicon: Iterable[str]) -> Optional[str]:
    """Lexicon verb for ``word``, allowing simple inflections."""
    if word in lexicon:
        return word
    for suffix, repl in (("ing", ""), ("ing", "e"), ("ies", "y"), ("es", ""), ("s", ""), ("ed", ""), ("ed", "e"), ("d", "")):
        if word.endswith(suffix) and len(word) > len(suffix) + 1:
            stem = word[: -len(suffix)] + repl
            if stem in lexicon:
                return stem
            if suffix in ("ing", "ed") and len(stem) > 2 and stem[-1] == stem[-2]:
                if stem[:-1] in lexicon:
                    return stem[:-1]
    return None


def _cap(word: str) -> str:
    return word[:1].upper() + word[1:]


def sanitize_identifier(name: str) -> str:
    name = re.sub(r"[^A-Za-z0-9]", "", name)
    name = name.lstrip("0123456789")
    return name


def generate_method_name(title: str, answer_id: Optional[int] = None,
                         lexicon: Optional[frozenset[str]] = None) -> str:
    """camelCase ``verb + Object`` for ``title``; ``snippet<answer_id>`` when no verb is found."""
    lexicon = default_lexicon() if lexicon is None else lexicon
    tokens = _WORD.findall(title or "")
    i = 0
    while i < len(tokens) and tokens[i].lower() in INTERROGATIVE_PREFIX:
        i += 1
    tokens = tokens[i:]
    name = ""
    for k, tok in enumerate(tokens):
        verb = _verb_stem(tok.lower(), lexicon)
        if verb is None:
            continue
        parts = [verb]
        prev = ""
        for nxt in tokens[k + 1:]:
            low, after_conj = nxt.lower(), prev in CONJUNCTIONS
            prev = low
            if low in STOPWORDS:
                continue
            if after_conj and len(parts) == 1 and _verb_stem(low, lexicon):
                # coordinated verb, as in "read and write a file"
                continue
            if low in PREPOSITIONS:
                if len(parts) > 1:
                    break
                continue
            parts.append(_cap(nxt))
            if low not in ADJECTIVES:
                break
        name = sanitize_identifier(parts[0] + "".join(parts[1:]))
        break
    if not name:
        return "snippet" + ("" if answer_id is None else str(answer_id))
    return name[0].lower() + name[1:]
