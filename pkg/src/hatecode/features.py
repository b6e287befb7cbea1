"""Document-frequency vocabulary and boolean bag-of-words vectors."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from hatecode.errors import EmptyVocabulary

DEFAULT_MIN_DF = 2
DEFAULT_MAX_TERMS = 1000


@dataclass(frozen=True)
class Vocabulary:
    terms: tuple[str, ...]
    doc_freq: Mapping[str, int]
    min_df: int
    max_terms: int
    index: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(set(self.terms)) != len(self.terms):
            raise ValueError("vocabulary terms must be unique")
        if len(self.terms) > self.max_terms:
            raise ValueError("vocabulary exceeds max_terms")
        object.__setattr__(self, "index", {t: i for i, t in enumerate(self.terms)})

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, term: str) -> bool:
        return term in self.index

    def to_records(self) -> list[dict]:
        return [{"term": t, "doc_freq": self.doc_freq[t]} for t in self.terms]


@dataclass(frozen=True, eq=False)
class FeatureVector:
    bits: np.ndarray
    source_id: str | None = None

    def __len__(self) -> int:
        return len(self.bits)

    def __eq__(self, other):
        if not isinstance(other, FeatureVector):
            return NotImplemented
        return self.source_id == other.source_id and np.array_equal(self.bits, other.bits)


def document_frequencies(docs: Iterable[Sequence[str]]) -> Counter:
    df: Counter = Counter()
    for doc in docs:
        df.update(set(doc))
    return df


def build_vocabulary(
    docs: Iterable[Sequence[str]],
    min_df: int = DEFAULT_MIN_DF,
    max_terms: int = DEFAULT_MAX_TERMS,
    exclude_mentions: bool = False,
) -> Vocabulary:
    """Keep the ``max_terms`` most document-frequent terms with df >= ``min_df``.

    Order is descending df, ties lexicographic. With ``exclude_mentions``
    any ``@handle`` term is left out.
    """
    if min_df < 1 or max_terms < 1:
        raise ValueError("min_df and max_terms must be >= 1")
    df = document_frequencies(docs)
    ranked = sorted(
        (t for t, n in df.items() if n >= min_df and not (exclude_mentions and t.startswith("@"))),
        key=lambda t: (-df[t], t),
    )[:max_terms]
    if not ranked:
        raise EmptyVocabulary(f"no term reaches min_df={min_df}")
    return Vocabulary(tuple(ranked), {t: df[t] for t in ranked}, min_df, max_terms)


def vectorize(doc: Iterable[str], vocab: Vocabulary, source_id: str | None = None) -> FeatureVector:
    bits = np.zeros(len(vocab), dtype=bool)
    for term in doc:
        i = vocab.index.get(term)
        if i is not None:
            bits[i] = True
    return FeatureVector(bits, source_id)


def vectorize_many(docs: Sequence[Sequence[str]], vocab: Vocabulary) -> np.ndarray:
    """Stack boolean vectors for ``docs`` into an ``(n_docs, |vocab|)`` array."""
    out = np.zeros((len(docs), len(vocab)), dtype=bool)
    for row, doc in enumerate(docs):
        for term in doc:
            i = vocab.index.get(term)
            if i is not None:
                out[row, i] = True
    return out
