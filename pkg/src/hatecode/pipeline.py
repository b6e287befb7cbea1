"""End-to-end flows: annotate -> train, and tweets -> predictions -> aggressors."""

from __future__ import annotations

from typing import Sequence

from hatecode.analysis import AggressorRecord, extract_aggressors
from hatecode.classifier import Hyperparameters, LinearModel, Prediction, Preprocessing, predict_many, train
from hatecode.corpus import Label, LabeledTweet, Tweet
from hatecode.features import (
    DEFAULT_MAX_TERMS,
    DEFAULT_MIN_DF,
    FeatureVector,
    build_vocabulary,
    vectorize_many,
)
from hatecode.textprep import preprocess


def preprocess_all(tweets: Sequence[Tweet], prep: Preprocessing) -> list[list[str]]:
    return [preprocess(t.text, prep.stopwords, prep.keep_mentions) for t in tweets]


def fit_model(
    labeled: Sequence[LabeledTweet],
    hyper: Hyperparameters | None = None,
    min_df: int = DEFAULT_MIN_DF,
    max_terms: int = DEFAULT_MAX_TERMS,
    prep: Preprocessing | None = None,
) -> LinearModel:
    prep = prep or Preprocessing()
    # Canonical id order keeps training independent of file order.
    labeled = sorted(labeled, key=lambda lt: lt.tweet.id)
    docs = preprocess_all([lt.tweet for lt in labeled], prep)
    vocab = build_vocabulary(docs, min_df, max_terms)
    X = vectorize_many(docs, vocab)
    data = [(FeatureVector(row, lt.tweet.id), lt.label) for row, lt in zip(X, labeled)]
    return train(data, hyper, vocab, prep)


def classify(model: LinearModel, tweets: Sequence[Tweet]) -> list[tuple[Tweet, Prediction]]:
    docs = preprocess_all(tweets, model.preprocessing)
    return list(zip(tweets, predict_many(model, vectorize_many(docs, model.vocab))))


def flagged_tweets(model: LinearModel, tweets: Sequence[Tweet]) -> list[Tweet]:
    return [t for t, p in classify(model, tweets) if p.label is Label.HATEFUL]


def find_aggressors(model: LinearModel, tweets: Sequence[Tweet], threshold: int) -> list[AggressorRecord]:
    return extract_aggressors(((t.handle, t.id) for t in flagged_tweets(model, tweets)), threshold)
