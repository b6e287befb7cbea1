from datetime import date

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hatecode.analysis import DailyBin, extract_aggressors, peak, timeline
from hatecode.errors import EmptyTimeline

from conftest import make_tweet


def test_timeline_gap_fill():
    tweets = [make_tweet(i, ts="2016-10-04T0%d:00:00Z" % i) for i in range(3)]
    tweets.append(make_tweet(9, ts="2016-10-06T23:59:59Z"))
    assert timeline(tweets) == [
        DailyBin(date(2016, 10, 4), 3),
        DailyBin(date(2016, 10, 5), 0),
        DailyBin(date(2016, 10, 6), 1),
    ]


def test_timeline_empty_and_single_day():
    assert timeline([]) == []
    same = [make_tweet(i) for i in range(5)]
    assert timeline(same) == [DailyBin(date(2016, 10, 4), 5)]


def test_timeline_bins_by_utc_day():
    t = make_tweet(1, ts="2016-10-04T23:30:00-04:00")
    assert timeline([t]) == [DailyBin(date(2016, 10, 5), 1)]


def test_peak():
    d1, d2, d3 = date(2016, 10, 1), date(2016, 10, 2), date(2016, 10, 3)
    assert peak([DailyBin(d1, 3), DailyBin(d2, 0), DailyBin(d3, 1)]) == DailyBin(d1, 3)
    assert peak([DailyBin(d1, 2), DailyBin(d2, 2)]) == DailyBin(d1, 2)
    with pytest.raises(EmptyTimeline):
        peak([])


stamps = st.lists(st.integers(0, 40 * 86400), max_size=60)


@given(stamps)
def test_timeline_properties(offsets):
    from datetime import datetime, timedelta, timezone

    base = datetime(2016, 9, 23, tzinfo=timezone.utc)
    tweets = [make_tweet(i, ts=(base + timedelta(seconds=s)).isoformat()) for i, s in enumerate(offsets)]
    bins = timeline(tweets)
    assert sum(b.count for b in bins) == len(tweets)
    for a, b in zip(bins, bins[1:]):
        assert (b.date - a.date).days == 1


def test_aggressors_threshold_example():
    flagged = [("A", f"a{i}") for i in range(5)] + [("B", f"b{i}") for i in range(3)]
    [rec] = extract_aggressors(flagged, 4)
    assert (rec.handle, rec.hateful_count) == ("A", 5)
    assert rec.tweet_ids == tuple(f"a{i}" for i in range(5))


def test_aggressors_edge_cases():
    assert extract_aggressors([], 4) == []
    flagged = [("x", "1"), ("y", "2"), ("y", "3")]
    assert [r.handle for r in extract_aggressors(flagged, 1)] == ["y", "x"]
    with pytest.raises(ValueError):
        extract_aggressors(flagged, 0)


def test_aggressors_sorted_count_then_handle():
    flagged = [("b", "1"), ("a", "2"), ("c", "3"), ("c", "4")]
    assert [r.handle for r in extract_aggressors(flagged, 1)] == ["c", "a", "b"]


flagged_st = st.lists(st.tuples(st.sampled_from("pqrstu"), st.text("0123456789", min_size=1, max_size=4)), max_size=40)


@given(flagged_st, st.integers(1, 6), st.randoms())
def test_aggressor_properties(flagged, threshold, rnd):
    out = extract_aggressors(flagged, threshold)
    higher = {r.handle for r in extract_aggressors(flagged, threshold + 1)}
    assert higher <= {r.handle for r in out}
    shuffled = list(flagged)
    rnd.shuffle(shuffled)
    assert extract_aggressors(shuffled, threshold) == out
    for r in out:
        assert r.hateful_count == len(r.tweet_ids) >= threshold
