"""Daily timelines of flagged tweets and aggressor extraction."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from datetime import date, timedelta, timezone
from typing import Iterable, Sequence

from hatecode.corpus import Tweet
from hatecode.errors import EmptyTimeline

DEFAULT_THRESHOLD = 4


@dataclass(frozen=True)
class DailyBin:
    date: date
    count: int


@dataclass(frozen=True)
class AggressorRecord:
    handle: str
    hateful_count: int
    tweet_ids: tuple[str, ...]

    def to_dict(self) -> dict:
        return {"handle": self.handle, "hateful_count": self.hateful_count, "tweet_ids": list(self.tweet_ids)}


def timeline(tweets: Iterable[Tweet]) -> list[DailyBin]:
    """Count tweets per UTC day, zero-filling days between the first and last."""
    days = Counter(t.timestamp.astimezone(timezone.utc).date() for t in tweets)
    if not days:
        return []
    start, end = min(days), max(days)
    return [
        DailyBin(start + timedelta(days=i), days.get(start + timedelta(days=i), 0))
        for i in range((end - start).days + 1)
    ]


def peak(bins: Sequence[DailyBin]) -> DailyBin:
    """Busiest day; the earliest wins a tie."""
    if not bins:
        raise EmptyTimeline("timeline is empty")
    return min(bins, key=lambda b: (-b.count, b.date))


def extract_aggressors(
    flagged: Iterable[tuple[str, str]], threshold: int = DEFAULT_THRESHOLD
) -> list[AggressorRecord]:
    """Handles with at least ``threshold`` flagged ``(handle, tweet_id)`` pairs.

    Sorted by count descending, then handle.
    """
    if threshold < 1:
        raise ValueError(f"threshold must be >= 1, got {threshold}")
    by_handle: dict[str, list[str]] = defaultdict(list)
    for handle, tweet_id in flagged:
        by_handle[handle].append(tweet_id)
    records = [
        AggressorRecord(h, len(ids), tuple(sorted(ids)))
        for h, ids in by_handle.items()
        if len(ids) >= threshold
    ]
    return sorted(records, key=lambda r: (-r.hateful_count, r.handle))
