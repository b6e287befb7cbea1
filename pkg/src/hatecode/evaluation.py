"""Stratified k-fold cross-validation and confusion-matrix metrics."""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Sequence

import numpy as np

from hatecode.classifier import Hyperparameters, Preprocessing, fit_arrays, label_for
from hatecode.corpus import Label, LabeledTweet, class_counts
from hatecode.errors import TooFewExamples
from hatecode.features import DEFAULT_MAX_TERMS, DEFAULT_MIN_DF, build_vocabulary, vectorize_many
from hatecode.textprep import preprocess

CLASSES = (Label.BENIGN, Label.HATEFUL)


@dataclass(frozen=True)
class ConfusionMatrix:
    """Rows are actual classes, columns predicted, both ordered (Benign, Hateful)."""

    counts: tuple[tuple[int, int], tuple[int, int]]

    def __post_init__(self):
        if any(c < 0 for row in self.counts for c in row):
            raise ValueError("confusion counts must be non-negative")

    @classmethod
    def from_pairs(cls, actual: Sequence[Label], predicted: Sequence[Label]) -> "ConfusionMatrix":
        grid = [[0, 0], [0, 0]]
        for a, p in zip(actual, predicted, strict=True):
            grid[CLASSES.index(a)][CLASSES.index(p)] += 1
        return cls((tuple(grid[0]), tuple(grid[1])))

    def __add__(self, other: "ConfusionMatrix") -> "ConfusionMatrix":
        a, b = self.counts, other.counts
        return ConfusionMatrix(
            ((a[0][0] + b[0][0], a[0][1] + b[0][1]), (a[1][0] + b[1][0], a[1][1] + b[1][1]))
        )

    @property
    def total(self) -> int:
        return sum(sum(row) for row in self.counts)

    def row_sum(self, i: int) -> int:
        return sum(self.counts[i])

    def col_sum(self, j: int) -> int:
        return self.counts[0][j] + self.counts[1][j]


@dataclass(frozen=True)
class ClassMetrics:
    tp_rate: float | None
    fp_rate: float | None
    precision: float | None
    recall: float | None


@dataclass(frozen=True)
class EvalReport:
    benign: ClassMetrics
    hateful: ClassMetrics
    average: ClassMetrics
    accuracy: float
    matrix: ConfusionMatrix
    folds: int

    @property
    def per_class(self) -> dict[Label, ClassMetrics]:
        return {Label.BENIGN: self.benign, Label.HATEFUL: self.hateful}

    def to_dict(self) -> dict:
        return {
            "per_class": {"benign": asdict(self.benign), "hateful": asdict(self.hateful)},
            "average": asdict(self.average),
            "accuracy": self.accuracy,
            "matrix": [list(r) for r in self.matrix.counts],
            "folds": self.folds,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        rows = [("Class", "TP-Rate", "FP-Rate", "Precision", "Recall")]
        for name, m in (("Benign", self.benign), ("Hateful", self.hateful), ("Average", self.average)):
            rows.append((name, *(fmt3(v) for v in (m.tp_rate, m.fp_rate, m.precision, m.recall))))
        widths = [max(len(r[i]) for r in rows) for i in range(5)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
        (tn, fp), (fn, tp) = self.matrix.counts
        lines += [
            "",
            f"Accuracy: {self.accuracy * 100:.4f}% ({self.folds}-fold)",
            "",
            "Confusion matrix (rows actual, columns predicted)",
            f"{'':8}{'Benign':>8}{'Hateful':>8}",
            f"{'Benign':8}{tn:>8}{fp:>8}",
            f"{'Hateful':8}{fn:>8}{tp:>8}",
        ]
        return "\n".join(lines) + "\n"


def round3(value: float | None) -> float | None:
    """Half-up rounding to three decimals, the display precision of reports."""
    if value is None:
        return None
    return float(Decimal(repr(value)).quantize(Decimal("0.001"), rounding=ROUND_HALF_UP))


def fmt3(value: float | None) -> str:
    return "n/a" if value is None else f"{round3(value):.3f}"


def _ratio(num: int, den: int) -> float | None:
    return num / den if den else None


def _weighted(values: Sequence[float | None], weights: Sequence[int]) -> float | None:
    if any(v is None for v in values):
        return None
    total = sum(weights)
    return sum(v * w for v, w in zip(values, weights)) / total if total else None


def metrics_from_cm(
    matrix: ConfusionMatrix, class_counts: tuple[int, int] | None = None, folds: int = 1
) -> EvalReport:
    """Derive per-class, weighted-average and accuracy figures from ``matrix``.

    Undefined ratios (empty row or column) are ``None`` rather than zero.
    """
    counts = (matrix.row_sum(0), matrix.row_sum(1))
    if class_counts is not None and tuple(class_counts) != counts:
        raise ValueError(f"class counts {tuple(class_counts)} disagree with matrix rows {counts}")
    per_class = []
    for c in (0, 1):
        other = 1 - c
        recall = _ratio(matrix.counts[c][c], matrix.row_sum(c))
        per_class.append(
            ClassMetrics(
                tp_rate=recall,
                fp_rate=_ratio(matrix.counts[other][c], matrix.row_sum(other)),
                precision=_ratio(matrix.counts[c][c], matrix.col_sum(c)),
                recall=recall,
            )
        )
    average = ClassMetrics(
        *(
            _weighted([getattr(m, f) for m in per_class], counts)
            for f in ("tp_rate", "fp_rate", "precision", "recall")
        )
    )
    total = matrix.total
    accuracy = (matrix.counts[0][0] + matrix.counts[1][1]) / total if total else 0.0
    return EvalReport(per_class[0], per_class[1], average, accuracy, matrix, folds)


def make_folds(data: Sequence[LabeledTweet], k: int, seed: int = 42) -> list[list[int]]:
    """Split indices of ``data`` into ``k`` stratified, disjoint folds.

    Members of each class are ordered by tweet id and shuffled with the
    seeded generator, then all classes are dealt round-robin in one
    continuous pass so fold sizes never differ by more than one. The
    split does not depend on the order of ``data``.
    """
    if k < 2:
        raise TooFewExamples(f"k must be >= 2, got {k}")
    rng = np.random.default_rng(seed)
    dealt: list[int] = []
    for label in CLASSES:
        members = sorted((i for i, lt in enumerate(data) if lt.label is label), key=lambda i: data[i].tweet.id)
        if len(members) < k:
            raise TooFewExamples(f"class {label.value} has {len(members)} examples, fewer than k={k}")
        dealt.extend(members[j] for j in rng.permutation(len(members)))
    folds: list[list[int]] = [[] for _ in range(k)]
    for pos, idx in enumerate(dealt):
        folds[pos % k].append(idx)
    return [sorted(f, key=lambda i: data[i].tweet.id) for f in folds]


def _run_fold(
    docs: Sequence[list[str]],
    labels: Sequence[Label],
    train_idx: Sequence[int],
    test_idx: Sequence[int],
    hyper: Hyperparameters,
    min_df: int,
    max_terms: int,
) -> ConfusionMatrix:
    vocab = build_vocabulary([docs[i] for i in train_idx], min_df, max_terms)
    X = vectorize_many([docs[i] for i in train_idx], vocab).astype(np.float64)
    y = np.array([labels[i].sign for i in train_idx], dtype=np.float64)
    w, b = fit_arrays(X, y, hyper)
    X_test = vectorize_many([docs[i] for i in test_idx], vocab).astype(np.float64)
    scores = X_test @ w + b
    return ConfusionMatrix.from_pairs([labels[i] for i in test_idx], [label_for(float(s)) for s in scores])


def cross_validate(
    data: Sequence[LabeledTweet],
    k: int = 10,
    hyper: Hyperparameters | None = None,
    seed: int = 42,
    min_df: int = DEFAULT_MIN_DF,
    max_terms: int = DEFAULT_MAX_TERMS,
    preprocessing: Preprocessing | None = None,
    workers: int = 1,
) -> EvalReport:
    """Stratified k-fold CV with one pooled confusion matrix.

    The vocabulary is rebuilt from each fold's training split; held-out
    documents never contribute terms.
    """
    hyper = hyper or Hyperparameters(seed=seed)
    prep = preprocessing or Preprocessing()
    folds = make_folds(data, k, seed)
    docs = [preprocess(lt.tweet.text, prep.stopwords, prep.keep_mentions) for lt in data]
    labels = [lt.label for lt in data]

    def job(f: int) -> ConfusionMatrix:
        train_idx = sorted(
            (i for g, fold in enumerate(folds) if g != f for i in fold), key=lambda i: data[i].tweet.id
        )
        return _run_fold(docs, labels, train_idx, folds[f], hyper, min_df, max_terms)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            matrices = list(pool.map(job, range(k)))
    else:
        matrices = [job(f) for f in range(k)]
    pooled = ConfusionMatrix(((0, 0), (0, 0)))
    for m in matrices:
        pooled = pooled + m
    return metrics_from_cm(pooled, class_counts(data), folds=k)
