"""Linear SVM trained by averaged primal subgradient descent.

Objective::

    0.5 * ||w||^2 + C * sum_i max(0, 1 - y_i * (w . x_i + b))

which is the Pegasos objective ``lam/2 ||w||^2 + mean hinge`` scaled by
``C * n`` with ``lam = 1 / (C * n)``. The bias is not regularized.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from hatecode.corpus import Label
from hatecode.errors import DimensionMismatch, SchemaError, SingleClassData
from hatecode.features import FeatureVector, Vocabulary
from hatecode.textprep import default_stopwords

MODEL_VERSION = 1


@dataclass(frozen=True)
class Hyperparameters:
    C: float = 1.0
    epochs: int = 50
    seed: int = 42

    def __post_init__(self):
        if not (self.C > 0 and math.isfinite(self.C)):
            raise ValueError(f"C must be a positive finite number, got {self.C}")
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {self.epochs}")


@dataclass(frozen=True)
class Preprocessing:
    """How raw text was turned into terms for this model."""

    stopwords: frozenset[str] = field(default_factory=default_stopwords)
    keep_mentions: bool = False


@dataclass(frozen=True, eq=False)
class LinearModel:
    weights: np.ndarray
    bias: float
    vocab: Vocabulary
    hyper: Hyperparameters
    trained_on: int
    preprocessing: Preprocessing = field(default_factory=Preprocessing)

    def __post_init__(self):
        if self.weights.ndim != 1 or len(self.weights) != len(self.vocab):
            raise DimensionMismatch(
                f"{len(self.weights)} weights for a vocabulary of {len(self.vocab)} terms"
            )
        if not (np.all(np.isfinite(self.weights)) and math.isfinite(self.bias)):
            raise ValueError("model parameters must be finite")

    def decision_function(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        if X.ndim == 1:
            X = X[None, :]
        if X.shape[1] != len(self.weights):
            raise DimensionMismatch(f"vector length {X.shape[1]} != model size {len(self.weights)}")
        return X @ self.weights + self.bias


@dataclass(frozen=True)
class Prediction:
    label: Label
    score: float


def label_for(score: float) -> Label:
    # A score of exactly zero is Benign.
    return Label.HATEFUL if score > 0 else Label.BENIGN


def objective(w: np.ndarray, b: float, X: np.ndarray, y: np.ndarray, C: float) -> float:
    margins = y * (X @ w + b)
    return 0.5 * float(w @ w) + C * float(np.maximum(0.0, 1.0 - margins).sum())


def _as_matrix(data: Sequence[tuple[FeatureVector, Label]]) -> tuple[np.ndarray, np.ndarray]:
    if not data:
        raise SingleClassData("no training examples")
    dims = {len(fv) for fv, _ in data}
    if len(dims) != 1:
        raise DimensionMismatch(f"feature vectors have differing lengths {sorted(dims)}")
    X = np.stack([np.asarray(fv.bits, dtype=np.float64) for fv, _ in data])
    y = np.array([lbl.sign for _, lbl in data], dtype=np.float64)
    if len(set(y.tolist())) < 2:
        raise SingleClassData("training data holds a single class")
    return X, y


def fit_arrays(X: np.ndarray, y: np.ndarray, hyper: Hyperparameters) -> tuple[np.ndarray, float]:
    """Run the subgradient solver on a dense design matrix and +/-1 targets.

    Weights take the step ``1 / (lam * t)``; the bias takes ``C / t``,
    i.e. the same step divided by ``n``. The bias is unregularized, so
    nothing shrinks it back after the huge early weight steps (the first
    is ``C * n``); at full step it drifts with the class imbalance.

    Returns ``(w, b)`` averaged over the second half of all steps.
    """
    n, d = X.shape
    lam = 1.0 / (hyper.C * n)
    rng = np.random.default_rng(hyper.seed)
    w = np.zeros(d)
    b = 0.0
    w_sum = np.zeros(d)
    b_sum = 0.0
    burn_in = (hyper.epochs * n) // 2
    t = 0
    for _ in range(hyper.epochs):
        for i in rng.permutation(n):
            t += 1
            eta = 1.0 / (lam * t)
            xi = X[i]
            violated = y[i] * (xi @ w + b) < 1.0
            w *= 1.0 - 1.0 / t
            if violated:
                w += (eta * y[i]) * xi
                b += eta * y[i] / n
            if t > burn_in:
                w_sum += w
                b_sum += b
    averaged = t - burn_in
    return w_sum / averaged, b_sum / averaged


def train(
    data: Sequence[tuple[FeatureVector, Label]],
    hyper: Hyperparameters | None = None,
    vocab: Vocabulary | None = None,
    preprocessing: Preprocessing | None = None,
) -> LinearModel:
    """Fit a linear SVM on ``(vector, label)`` pairs.

    Without ``vocab`` the model gets a positional vocabulary ``f0, f1, ...``.
    """
    hyper = hyper or Hyperparameters()
    X, y = _as_matrix(data)
    if vocab is None:
        names = tuple(f"f{i}" for i in range(X.shape[1]))
        df = {nm: int(c) for nm, c in zip(names, (X > 0).sum(axis=0))}
        vocab = Vocabulary(names, df, 1, max(1, X.shape[1]))
    elif len(vocab) != X.shape[1]:
        raise DimensionMismatch(f"vectors have {X.shape[1]} features, vocabulary has {len(vocab)}")
    w, b = fit_arrays(X, y, hyper)
    return LinearModel(w, float(b), vocab, hyper, len(data), preprocessing or Preprocessing())


def predict(model: LinearModel, vector: FeatureVector) -> Prediction:
    score = float(model.decision_function(vector.bits)[0])
    return Prediction(label_for(score), score)


def predict_many(model: LinearModel, X: np.ndarray) -> list[Prediction]:
    if len(X) == 0:
        return []
    return [Prediction(label_for(float(s)), float(s)) for s in model.decision_function(X)]


def model_to_dict(model: LinearModel) -> dict:
    return {
        "version": MODEL_VERSION,
        "weights": [float(x) for x in model.weights],
        "bias": float(model.bias),
        "vocab": {
            "terms": list(model.vocab.terms),
            "doc_freq": [int(model.vocab.doc_freq[t]) for t in model.vocab.terms],
            "min_df": model.vocab.min_df,
            "max_terms": model.vocab.max_terms,
        },
        "hyper": {"C": model.hyper.C, "epochs": model.hyper.epochs, "seed": model.hyper.seed},
        "trained_on": model.trained_on,
        "preprocessing": {
            "stopwords": sorted(model.preprocessing.stopwords),
            "keep_mentions": model.preprocessing.keep_mentions,
        },
    }


def model_from_dict(doc: dict) -> LinearModel:
    if not isinstance(doc, dict):
        raise SchemaError("model file must hold a JSON object")
    if doc.get("version") != MODEL_VERSION:
        raise SchemaError(f"unsupported model version {doc.get('version')!r}")
    try:
        v = doc["vocab"]
        terms = tuple(str(t) for t in v["terms"])
        dfs = v.get("doc_freq") or [0] * len(terms)
        if len(dfs) != len(terms):
            raise SchemaError("vocab.doc_freq and vocab.terms differ in length")
        vocab = Vocabulary(terms, dict(zip(terms, (int(x) for x in dfs))), int(v["min_df"]), int(v["max_terms"]))
        weights = np.array([float(x) for x in doc["weights"]], dtype=np.float64)
        if len(weights) != len(terms):
            raise SchemaError(f"{len(weights)} weights for {len(terms)} vocabulary terms")
        h = doc["hyper"]
        hyper = Hyperparameters(float(h["C"]), int(h["epochs"]), int(h["seed"]))
        pp = doc.get("preprocessing")
        prep = (
            Preprocessing(frozenset(pp["stopwords"]), bool(pp["keep_mentions"]))
            if pp is not None
            else Preprocessing()
        )
        return LinearModel(weights, float(doc["bias"]), vocab, hyper, int(doc["trained_on"]), prep)
    except SchemaError:
        raise
    except (KeyError, TypeError, ValueError, DimensionMismatch) as exc:
        raise SchemaError(f"invalid model file: {exc}") from None


def save_model(model: LinearModel, path: str | Path) -> None:
    Path(path).write_text(json.dumps(model_to_dict(model), indent=1) + "\n", encoding="utf-8")


def load_model(path: str | Path) -> LinearModel:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"corrupted model file: {exc.msg}") from None
    return model_from_dict(doc)
