"""Seeded synthetic tweet corpora for demos and end-to-end tests.

Hateful tweets pair codewords with hostile context; benign tweets use the
same codewords as ordinary product and object names. A separate "stream"
corpus plants a few heavy posters of hateful tweets and a one-day spike.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date, datetime, timedelta, timezone

import numpy as np

from hatecode.corpus import Label, LabeledTweet, Tweet

CODEWORDS = ("googles", "yahoos", "skypes", "bings", "skittles", "butterflies")
HATE_TERMS = (
    "gas", "destroy", "war", "hate", "vermin", "invade", "filthy", "deport",
    "exterminate", "#maga", "#altright", "#mawa", "white", "goy", "traitor",
    "parasite", "purge", "(((them)))", "scum", "subhuman",
)
BENIGN_TERMS = (
    "call", "mom", "family", "dinner", "search", "email", "chrome", "candy",
    "rainbow", "garden", "video", "meeting", "app", "phone", "download",
    "taste", "morning", "friend", "weekend", "map", "flower", "colorful",
    "update", "chat", "grandma", "birthday",
)
FILLER = (
    "today", "really", "people", "know", "think", "time", "new", "like",
    "everyone", "lol", "day", "guy", "yeah", "always", "right", "good",
)
GLUE = ("the", "all", "are", "to", "and", "with", "my", "of")

CORPUS_START = datetime(2016, 9, 23, tzinfo=timezone.utc)
CORPUS_DAYS = 26
SPIKE_DAY = date(2016, 10, 4)


@dataclass(frozen=True)
class SyntheticCorpus:
    labeled: tuple[LabeledTweet, ...]
    aggressors: tuple[str, ...] = ()
    spike_day: date | None = None

    @property
    def tweets(self) -> list[Tweet]:
        return [lt.tweet for lt in self.labeled]


class _Writer:
    def __init__(self, rng: np.random.Generator, crossover: float):
        self.rng = rng
        self.crossover = crossover
        self.seen: set[str] = set()

    def _pick(self, pool, k):
        return [pool[i] for i in self.rng.choice(len(pool), size=k, replace=False)]

    def text(self, hateful: bool) -> str:
        while True:
            words = self._pick(CODEWORDS, int(self.rng.integers(1, 3)))
            context, other = (HATE_TERMS, BENIGN_TERMS) if hateful else (BENIGN_TERMS, HATE_TERMS)
            words += self._pick(context, int(self.rng.integers(1, 4)))
            if self.rng.random() < self.crossover:
                words += self._pick(other, 1)
            words += self._pick(FILLER, int(self.rng.integers(1, 4)))
            words += self._pick(GLUE, 2)
            order = self.rng.permutation(len(words))
            text = " ".join(words[i] for i in order)
            if text not in self.seen:
                self.seen.add(text)
                return text


def _instant(rng: np.random.Generator, day: date | None = None) -> datetime:
    if day is None:
        base = CORPUS_START + timedelta(days=int(rng.integers(0, CORPUS_DAYS)))
    else:
        base = datetime(day.year, day.month, day.day, tzinfo=timezone.utc)
    return base + timedelta(seconds=int(rng.integers(0, 86400)))


def generate_corpus(
    n: int = 400, seed: int = 42, hateful_fraction: float = 0.5, crossover: float = 0.3
) -> SyntheticCorpus:
    """An annotated corpus of ``n`` tweets over 40 handles."""
    rng = np.random.default_rng(seed)
    writer = _Writer(rng, crossover)
    n_hate = int(round(n * hateful_fraction))
    flags = np.array([True] * n_hate + [False] * (n - n_hate))[rng.permutation(n)]
    labeled = []
    for i, hateful in enumerate(flags):
        tweet = Tweet(
            id=f"t{i:05d}",
            handle=f"user{int(rng.integers(0, 40)):02d}",
            timestamp=_instant(rng),
            text=writer.text(bool(hateful)),
        )
        labeled.append(LabeledTweet(tweet, Label.HATEFUL if hateful else Label.BENIGN))
    return SyntheticCorpus(tuple(labeled))


def generate_stream(
    seed: int = 7,
    n_handles: int = 20,
    n_aggressors: int = 2,
    aggressor_tweets: int = 6,
    spike_day: date = SPIKE_DAY,
    crossover: float = 0.1,
) -> SyntheticCorpus:
    """An unannotated-style stream with planted aggressors.

    Each planted aggressor posts ``aggressor_tweets`` hateful tweets on
    ``spike_day`` and a few benign ones elsewhere; every other handle posts
    at most one hateful tweet, never on the spike day.
    """
    rng = np.random.default_rng(seed)
    writer = _Writer(rng, crossover)
    handles = [f"handle{i:02d}" for i in range(n_handles)]
    planted = sorted(handles[i] for i in rng.choice(n_handles, size=n_aggressors, replace=False))
    quiet_days = [
        d for d in ((CORPUS_START + timedelta(days=i)).date() for i in range(CORPUS_DAYS)) if d != spike_day
    ]
    posts: list[tuple[str, bool, date]] = []
    for h in handles:
        if h in planted:
            posts += [(h, True, spike_day)] * aggressor_tweets
        elif rng.random() < 0.5:
            posts.append((h, True, quiet_days[int(rng.integers(len(quiet_days)))]))
        for _ in range(int(rng.integers(3, 7))):
            posts.append((h, False, quiet_days[int(rng.integers(len(quiet_days)))]))
    labeled = []
    for i, j in enumerate(rng.permutation(len(posts))):
        h, hateful, day = posts[j]
        tweet = Tweet(f"s{i:05d}", h, _instant(rng, day), writer.text(hateful))
        labeled.append(LabeledTweet(tweet, Label.HATEFUL if hateful else Label.BENIGN))
    return SyntheticCorpus(tuple(labeled), tuple(planted), spike_day)
