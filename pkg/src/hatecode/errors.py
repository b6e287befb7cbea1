"""Exception hierarchy.

``DataError`` subclasses describe bad input files or datasets (CLI exit 2);
``ConfigError`` subclasses describe out-of-range parameters (CLI exit 1).
"""

from __future__ import annotations


class HateCodeError(Exception):
    pass


class DataError(HateCodeError):
    pass


class ConfigError(HateCodeError, ValueError):
    pass


class ParseError(DataError):
    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class DuplicateId(DataError):
    def __init__(self, tweet_id: str):
        self.tweet_id = tweet_id
        super().__init__(f"duplicate id {tweet_id!r}")


class UnknownTweetId(DataError):
    def __init__(self, tweet_id: str):
        self.tweet_id = tweet_id
        super().__init__(f"label references unknown tweet id {tweet_id!r}")


class InvalidLabel(DataError):
    def __init__(self, value: str):
        self.value = value
        super().__init__(f"invalid label {value!r} (expected benign or hateful)")


class EmptyVocabulary(DataError):
    pass


class SingleClassData(DataError):
    pass


class DimensionMismatch(DataError):
    pass


class SchemaError(DataError):
    pass


class TooFewExamples(DataError):
    pass


class LengthMismatch(DataError):
    pass


class EmptyTimeline(DataError):
    pass


class InvalidSupport(ConfigError):
    pass
