"""Tweet and label ingestion, deduplication and the English filter."""

from __future__ import annotations

import csv
import enum
import io
import json
import re
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Sequence

from hatecode.errors import DuplicateId, InvalidLabel, ParseError, UnknownTweetId
from hatecode.textprep import TokenKind, default_stopwords, tokenize

TWEET_FIELDS = ("id", "handle", "created_at", "text")
LABEL_FIELDS = ("tweet_id", "label")
DEFAULT_ENGLISH_THRESHOLD = 0.10


class Label(enum.Enum):
    BENIGN = "benign"
    HATEFUL = "hateful"

    @classmethod
    def parse(cls, value: str) -> "Label":
        try:
            return cls(value.strip().lower())
        except ValueError:
            raise InvalidLabel(value) from None

    @property
    def sign(self) -> int:
        return 1 if self is Label.HATEFUL else -1


@dataclass(frozen=True)
class Tweet:
    id: str
    handle: str
    timestamp: datetime
    text: str

    def __post_init__(self):
        if not self.id:
            raise ValueError("tweet id must be non-empty")
        if not self.text.strip():
            raise ValueError(f"tweet {self.id!r} has empty text")


@dataclass(frozen=True)
class LabeledTweet:
    tweet: Tweet
    label: Label


def parse_timestamp(value: str) -> datetime:
    """Parse an ISO-8601 instant into an aware UTC datetime at second precision.

    Naive values are taken to be UTC already.
    """
    value = value.strip()
    if value.endswith(("Z", "z")):
        value = value[:-1] + "+00:00"
    ts = datetime.fromisoformat(value)
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc).replace(microsecond=0)


def format_timestamp(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _detect_format(path: Path, fmt: str | None) -> str:
    if fmt:
        return fmt
    return "csv" if path.suffix.lower() == ".csv" else "jsonl"


def _make_tweet(record: dict, line: int) -> Tweet:
    missing = [f for f in TWEET_FIELDS if record.get(f) in (None, "")]
    if missing:
        raise ParseError(line, f"missing field(s): {', '.join(missing)}")
    try:
        ts = parse_timestamp(str(record["created_at"]))
    except ValueError:
        raise ParseError(line, f"unparseable timestamp {record['created_at']!r}") from None
    text = str(record["text"])
    if not text.strip():
        raise ParseError(line, "empty text")
    return Tweet(id=str(record["id"]), handle=str(record["handle"]), timestamp=ts, text=text)


def _iter_jsonl(fh) -> Iterable[tuple[int, dict]]:
    for lineno, raw in enumerate(fh, start=1):
        if not raw.strip():
            continue
        try:
            record = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ParseError(lineno, f"invalid JSON: {exc.msg}") from None
        if not isinstance(record, dict):
            raise ParseError(lineno, "expected a JSON object")
        yield lineno, record


def _iter_csv(fh, required: Sequence[str]) -> Iterable[tuple[int, dict]]:
    reader = csv.DictReader(fh)
    if reader.fieldnames is None:
        return
    header = [h.strip() for h in reader.fieldnames]
    absent = [f for f in required if f not in header]
    if absent:
        raise ParseError(1, f"CSV header lacks column(s): {', '.join(absent)}")
    reader.fieldnames = header
    try:
        for row in reader:
            if None in row:
                raise ParseError(reader.line_num, "too many fields")
            yield reader.line_num, row
    except csv.Error as exc:
        raise ParseError(reader.line_num, f"malformed CSV: {exc}") from None


def load_tweets(path: str | Path, format: str | None = None) -> list[Tweet]:
    """Read tweets from a JSONL or CSV file, preserving file order.

    The format defaults to the file extension (``.csv`` or anything else
    as JSONL).
    """
    path = Path(path)
    fmt = _detect_format(path, format)
    if fmt not in ("jsonl", "csv"):
        raise ValueError(f"unknown tweet format {fmt!r}")
    tweets: list[Tweet] = []
    seen: set[str] = set()
    with path.open(encoding="utf-8", newline="") as fh:
        rows = _iter_jsonl(fh) if fmt == "jsonl" else _iter_csv(fh, TWEET_FIELDS)
        for lineno, record in rows:
            tweet = _make_tweet(record, lineno)
            if tweet.id in seen:
                raise DuplicateId(tweet.id)
            seen.add(tweet.id)
            tweets.append(tweet)
    return tweets


def tweet_to_record(tweet: Tweet) -> dict:
    return {
        "id": tweet.id,
        "handle": tweet.handle,
        "created_at": format_timestamp(tweet.timestamp),
        "text": tweet.text,
    }


def dumps_tweets(tweets: Iterable[Tweet], format: str = "jsonl") -> str:
    buf = io.StringIO()
    if format == "csv":
        writer = csv.DictWriter(buf, fieldnames=TWEET_FIELDS, lineterminator="\r\n")
        writer.writeheader()
        for t in tweets:
            writer.writerow(tweet_to_record(t))
    else:
        for t in tweets:
            buf.write(json.dumps(tweet_to_record(t), ensure_ascii=False) + "\n")
    return buf.getvalue()


def save_tweets(tweets: Iterable[Tweet], path: str | Path, format: str | None = None) -> None:
    path = Path(path)
    Path(path).write_text(dumps_tweets(tweets, _detect_format(path, format)), encoding="utf-8")


def load_labels(
    path: str | Path, tweets: Sequence[Tweet]
) -> tuple[list[LabeledTweet], tuple[int, int]]:
    """Join a ``tweet_id,label`` CSV onto ``tweets``.

    Returns the labeled tweets in corpus order together with the
    ``(benign, hateful)`` class counts. Unlabeled tweets are left out.
    """
    by_id = {t.id: t for t in tweets}
    labels: dict[str, Label] = {}
    with Path(path).open(encoding="utf-8", newline="") as fh:
        for _, row in _iter_csv(fh, LABEL_FIELDS):
            tweet_id = (row["tweet_id"] or "").strip()
            if tweet_id not in by_id:
                raise UnknownTweetId(tweet_id)
            if tweet_id in labels:
                raise DuplicateId(tweet_id)
            labels[tweet_id] = Label.parse(row["label"] or "")
    labeled = [LabeledTweet(t, labels[t.id]) for t in tweets if t.id in labels]
    return labeled, class_counts(labeled)


def class_counts(labeled: Iterable[LabeledTweet]) -> tuple[int, int]:
    benign = hateful = 0
    for lt in labeled:
        if lt.label is Label.HATEFUL:
            hateful += 1
        else:
            benign += 1
    return benign, hateful


def save_labels(labeled: Iterable[LabeledTweet], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(LABEL_FIELDS)
        for lt in labeled:
            writer.writerow([lt.tweet.id, lt.label.value])


_WS = re.compile(r"\s+")


def normalize_text(text: str) -> str:
    return _WS.sub(" ", text).strip().lower()


def deduplicate(tweets: Iterable[Tweet]) -> list[Tweet]:
    """Keep the first tweet for each lowercased, whitespace-collapsed text."""
    seen: set[str] = set()
    kept = []
    for t in tweets:
        key = normalize_text(t.text)
        if key not in seen:
            seen.add(key)
            kept.append(t)
    return kept


def english_score(text: str, stopwords: frozenset[str] | set[str]) -> tuple[int, int]:
    """Return ``(stopword_tokens, total_tokens)`` for ``text``."""
    tokens = [tok for tok in tokenize(text).tokens if tok.kind is not TokenKind.URL]
    hits = sum(1 for tok in tokens if tok.kind is TokenKind.WORD and tok.surface in stopwords)
    return hits, len(tokens)


def is_english(
    text: str,
    stopwords: frozenset[str] | set[str] | None = None,
    threshold: float = DEFAULT_ENGLISH_THRESHOLD,
) -> bool:
    if stopwords is None:
        stopwords = default_stopwords()
    hits, total = english_score(text, stopwords)
    if total == 0:
        return False
    return hits >= 2 or hits / total >= threshold


def filter_english(
    tweets: Iterable[Tweet],
    threshold: float = DEFAULT_ENGLISH_THRESHOLD,
    stopwords: frozenset[str] | set[str] | None = None,
) -> list[Tweet]:
    """Keep tweets whose stopword ratio reaches ``threshold`` or that hold two stopwords."""
    if stopwords is None:
        stopwords = default_stopwords()
    return [t for t in tweets if is_english(t.text, stopwords, threshold)]
