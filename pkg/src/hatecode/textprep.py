"""Tweet tokenizer, rule-based lemmatizer and stopword removal.

The lemmatizer is a small suffix stripper, not a dictionary lemmatizer:
it only has to fold plural and inflected codewords ("skypes", "googles")
onto their base term.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, replace
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable

ECHO = "ECHO"

_LETTERS = r"[^\W\d_]"
_TOKEN_RE = re.compile(
    rf"""
    (?P<url>https?://\S+)
  | (?P<echo>\({{3,}}(?P<inner>[^()]*)\){{3,}})
  | (?P<hashtag>\#\w+)
  | (?P<mention>@\w+)
  | (?P<number>\d+)
  | (?P<word>{_LETTERS}+(?:'{_LETTERS}+)*)
    """,
    re.VERBOSE,
)
_VOWELS = frozenset("aeiouy")


class TokenKind(enum.Enum):
    WORD = "word"
    HASHTAG = "hashtag"
    MENTION = "mention"
    URL = "url"
    ECHO = "echo"
    NUMBER = "number"


@dataclass(frozen=True)
class Token:
    surface: str
    kind: TokenKind

    def __str__(self) -> str:
        return self.surface


@dataclass(frozen=True)
class TokenList:
    tokens: tuple[Token, ...]
    source_id: str | None = None

    def __iter__(self):
        return iter(self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def surfaces(self) -> list[str]:
        return [t.surface for t in self.tokens]


def _scan(text: str, allow_echo: bool = True) -> list[Token]:
    out: list[Token] = []
    for m in _TOKEN_RE.finditer(text):
        kind = m.lastgroup
        if kind == "inner":
            kind = "echo"
        if kind == "echo":
            if not allow_echo:
                continue
            out.append(Token(ECHO, TokenKind.ECHO))
            out.extend(_scan(m.group("inner"), allow_echo=False))
        elif kind == "url":
            out.append(Token(m.group(), TokenKind.URL))
        elif kind == "hashtag":
            out.append(Token(m.group(), TokenKind.HASHTAG))
        elif kind == "mention":
            out.append(Token(m.group(), TokenKind.MENTION))
        elif kind == "number":
            out.append(Token(m.group(), TokenKind.NUMBER))
        else:
            out.extend(Token(w, TokenKind.WORD) for w in _letter_runs(m.group()))
    return out


def _letter_runs(span: str) -> list[str]:
    # \w admits a few non-alphabetic symbols (letter-like numerals); split on them.
    if all(c.isalpha() or c == "'" for c in span):
        return [span]
    runs, cur = [], []
    for c in span + " ":
        if c.isalpha() or c == "'":
            cur.append(c)
        else:
            run = "".join(cur).strip("'")
            if run:
                runs.append(run)
            cur = []
    return runs


def tokenize(text: str, source_id: str | None = None) -> TokenList:
    """Split a raw tweet into typed, lowercased tokens in reading order.

    ``(((name)))`` yields an ``ECHO`` marker followed by the inner tokens;
    punctuation that is not part of a URL, hashtag or mention is dropped.
    """
    return TokenList(tuple(_scan(text.lower())), source_id)


def _has_vowel(s: str) -> bool:
    return any(c in _VOWELS for c in s)


def _strip_once(word: str) -> str:
    if word.endswith("'s"):
        return word[:-2]
    if word.endswith("sses"):
        return word[:-2]
    if word.endswith("ies") and len(word) > 4:
        return word[:-2]
    if len(word) >= 4 and word.endswith("s") and word[-2] not in "sui'":
        return word[:-1]
    if word.endswith("ing") and len(word) >= 6 and _has_vowel(word[:-3]):
        return word[:-3]
    if (
        word.endswith("ed")
        and not word.endswith("eed")
        and len(word) >= 5
        and _has_vowel(word[:-2])
    ):
        return word[:-2]
    return word


@lru_cache(maxsize=65536)
def lemmatize_word(word: str) -> str:
    # Rules are applied until nothing changes, which makes the result a
    # fixed point and therefore idempotent.
    while True:
        stripped = _strip_once(word)
        if stripped == word or not stripped:
            return word
        word = stripped


def lemmatize(token: Token) -> Token:
    if token.kind is not TokenKind.WORD:
        return token
    return replace(token, surface=lemmatize_word(token.surface))


def remove_stopwords(tokens: TokenList, stopwords: Iterable[str]) -> TokenList:
    """Drop ``Word`` tokens found in ``stopwords``; other kinds always survive."""
    stop = stopwords if isinstance(stopwords, (set, frozenset)) else frozenset(stopwords)
    kept = tuple(t for t in tokens if not (t.kind is TokenKind.WORD and t.surface in stop))
    return TokenList(kept, tokens.source_id)


_DROPPED_KINDS = frozenset({TokenKind.URL, TokenKind.NUMBER})


def preprocess(
    text: str,
    stopwords: Iterable[str] | None = None,
    keep_mentions: bool = True,
) -> list[str]:
    """Full chain: tokenize, lemmatize, remove stopwords, drop URLs and numbers.

    Stopwords are checked on the surface form as well as on the lemma, so
    "does" is dropped before it can become the non-stopword "doe".
    """
    stop = default_stopwords() if stopwords is None else frozenset(stopwords)
    terms = []
    for tok in tokenize(text):
        if tok.kind in _DROPPED_KINDS:
            continue
        if tok.kind is TokenKind.MENTION and not keep_mentions:
            continue
        if tok.kind is TokenKind.WORD and tok.surface in stop:
            continue
        tok = lemmatize(tok)
        if tok.kind is TokenKind.WORD and tok.surface in stop:
            continue
        if tok.surface:
            terms.append(tok.surface)
    return terms


def parse_stopwords(text: str) -> frozenset[str]:
    words = set()
    for line in text.splitlines():
        line = line.strip().lower()
        if line and not line.startswith("#"):
            words.add(line)
    return frozenset(words)


@lru_cache(maxsize=1)
def default_stopwords() -> frozenset[str]:
    """The embedded English stopword list (179 words)."""
    text = resources.files("hatecode").joinpath("data/stopwords.txt").read_text(encoding="utf-8")
    return parse_stopwords(text)


def load_stopwords(path: str | Path | None) -> frozenset[str]:
    if path is None:
        return default_stopwords()
    return parse_stopwords(Path(path).read_text(encoding="utf-8"))
