"""Term/label phi correlation, Apriori itemsets and codeword co-occurrence."""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from importlib import resources
from itertools import combinations
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from hatecode.corpus import Label
from hatecode.errors import InvalidSupport, LengthMismatch
from hatecode.textprep import lemmatize_word

DEFAULT_MIN_SUPPORT = 0.05


@dataclass(frozen=True)
class CodewordLexicon:
    """Code term -> targeted community, keyed by lemmatized lowercase term."""

    entries: Mapping[str, str]

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, str]) -> "CodewordLexicon":
        entries: dict[str, str] = {}
        for key, target in mapping.items():
            lemma = lemmatize_word(key.strip().lower())
            if not lemma:
                raise ValueError(f"empty codeword {key!r}")
            if lemma in entries:
                raise ValueError(f"codeword {key!r} collides with an existing entry")
            entries[lemma] = str(target)
        return cls(entries)

    @property
    def terms(self) -> list[str]:
        return sorted(self.entries)

    def surface_forms(self, term: str) -> frozenset[str]:
        """Lemmatized forms that count as an occurrence of ``term``.

        Covers the plural ("butterflies" lemmatizes to "butterfli", not
        "butterfly").
        """
        forms = {term, lemmatize_word(term + "s")}
        if term.endswith("y"):
            forms.add(lemmatize_word(term[:-1] + "ies"))
        return frozenset(forms)

    def present(self, doc: Iterable[str]) -> set[str]:
        words = set(doc)
        return {t for t in self.entries if words & self.surface_forms(t)}


def default_lexicon() -> CodewordLexicon:
    text = resources.files("hatecode").joinpath("data/lexicon.json").read_text(encoding="utf-8")
    return CodewordLexicon.from_mapping(json.loads(text))


def load_lexicon(path: str | Path | None) -> CodewordLexicon:
    if path is None:
        return default_lexicon()
    mapping = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(mapping, dict) or not mapping:
        raise ValueError("lexicon file must hold a non-empty JSON object")
    return CodewordLexicon.from_mapping(mapping)


@dataclass(frozen=True)
class PhiScore:
    term: str
    phi: float | None
    n11: int  # term present, hateful
    n10: int  # term present, benign
    n01: int  # term absent, hateful
    n00: int  # term absent, benign

    @property
    def contingency(self) -> tuple[int, int, int, int]:
        return self.n11, self.n10, self.n01, self.n00


def phi_from_counts(n11: int, n10: int, n01: int, n00: int) -> float | None:
    denom = (n11 + n10) * (n01 + n00) * (n11 + n01) * (n10 + n00)
    if denom == 0:
        return None
    return (n11 * n00 - n10 * n01) / math.sqrt(denom)


def phi_correlation(docs: Sequence[Iterable[str]], labels: Sequence[Label]) -> list[PhiScore]:
    """One ``PhiScore`` per distinct term, in lexicographic term order."""
    if len(docs) != len(labels):
        raise LengthMismatch(f"{len(docs)} documents but {len(labels)} labels")
    if not docs:
        raise LengthMismatch("no documents")
    n_hate = sum(1 for lbl in labels if lbl is Label.HATEFUL)
    n_benign = len(labels) - n_hate
    in_hate: Counter = Counter()
    in_benign: Counter = Counter()
    for doc, lbl in zip(docs, labels):
        (in_hate if lbl is Label.HATEFUL else in_benign).update(set(doc))
    scores = []
    for term in sorted(set(in_hate) | set(in_benign)):
        n11, n10 = in_hate[term], in_benign[term]
        n01, n00 = n_hate - n11, n_benign - n10
        scores.append(PhiScore(term, phi_from_counts(n11, n10, n01, n00), n11, n10, n01, n00))
    return scores


def rank_terms(scores: Iterable[PhiScore], top_n: int = 10) -> list[PhiScore]:
    if top_n < 1:
        raise ValueError("top_n must be >= 1")
    defined = [s for s in scores if s.phi is not None]
    return sorted(defined, key=lambda s: (-s.phi, s.term))[:top_n]


@dataclass(frozen=True)
class Itemset:
    items: tuple[str, ...]
    support: float
    count: int

    def __post_init__(self):
        if not self.items or len(set(self.items)) != len(self.items):
            raise ValueError("itemset items must be non-empty and distinct")
        if list(self.items) != sorted(self.items):
            raise ValueError("itemset items must be sorted")


def _check_support(min_support: float) -> None:
    if not (0 < min_support <= 1):
        raise InvalidSupport(f"min_support must lie in (0, 1], got {min_support}")


def _count(candidates: Iterable[tuple[str, ...]], transactions: Sequence[frozenset[str]]) -> Counter:
    counts: Counter = Counter()
    for cand in candidates:
        cset = frozenset(cand)
        counts[cand] = sum(1 for t in transactions if cset <= t)
    return counts


def _join(frequent: list[tuple[str, ...]]) -> list[tuple[str, ...]]:
    """Candidate k-itemsets from sorted frequent (k-1)-itemsets, with subset pruning."""
    known = set(frequent)
    out = []
    for i, a in enumerate(frequent):
        for b in frequent[i + 1 :]:
            if a[:-1] != b[:-1]:
                break
            cand = a + (b[-1],)
            if all(sub in known for sub in combinations(cand, len(cand) - 1)):
                out.append(cand)
    return out


def apriori(transactions: Sequence[Iterable[str]], min_support: float = DEFAULT_MIN_SUPPORT) -> list[Itemset]:
    """Level-wise frequent itemset mining.

    Returns every itemset whose support reaches ``min_support``, ordered by
    size, then support descending, then items.
    """
    _check_support(min_support)
    txns = [frozenset(t) for t in transactions]
    if not txns:
        raise ValueError("apriori needs at least one transaction")
    n = len(txns)
    # Integer threshold avoids float round-off at exact boundaries.
    min_count = math.ceil(min_support * n - 1e-9)
    item_counts: Counter = Counter()
    for t in txns:
        item_counts.update(t)
    level = sorted((item,) for item, c in item_counts.items() if c >= min_count)
    found = {cand: item_counts[cand[0]] for cand in level}
    while level:
        counts = _count(_join(level), txns)
        level = sorted(c for c, cnt in counts.items() if cnt >= min_count)
        found.update((c, counts[c]) for c in level)
    result = [Itemset(items, cnt / n, cnt) for items, cnt in found.items()]
    result.sort(key=lambda s: (len(s.items), -s.count, s.items))
    return result


@dataclass(frozen=True)
class CooccurrenceEntry:
    term_a: str
    term_b: str
    percentage: float

    @property
    def pair(self) -> frozenset[str]:
        return frozenset((self.term_a, self.term_b))


def cooccurrence(docs: Sequence[Iterable[str]], lexicon: CodewordLexicon) -> list[CooccurrenceEntry]:
    """Percentage of ``docs`` holding each unordered pair of lexicon codewords."""
    terms = lexicon.terms
    if not terms:
        raise ValueError("lexicon is empty")
    pair_counts: Counter = Counter()
    for doc in docs:
        present = sorted(lexicon.present(doc))
        pair_counts.update(combinations(present, 2))
    n = len(docs)
    return [
        CooccurrenceEntry(a, b, 100.0 * pair_counts[(a, b)] / n if n else 0.0)
        for a, b in combinations(terms, 2)
    ]
