"""Coded hate-speech detection toolkit for tweet corpora."""

from hatecode.corpus import Label, LabeledTweet, Tweet

__version__ = "0.1.0"

__all__ = ["Label", "LabeledTweet", "Tweet", "__version__"]
