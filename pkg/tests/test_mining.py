import math
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hatecode.corpus import Label
from hatecode.errors import InvalidSupport, LengthMismatch
from hatecode.mining import (
    CodewordLexicon,
    Itemset,
    PhiScore,
    apriori,
    cooccurrence,
    default_lexicon,
    load_lexicon,
    phi_correlation,
    phi_from_counts,
    rank_terms,
)

H, B = Label.HATEFUL, Label.BENIGN


def pearson(x, y):
    """Product-moment correlation computed from the raw 0/1 vectors."""
    x, y = np.asarray(x, float), np.asarray(y, float)
    xc, yc = x - x.mean(), y - y.mean()
    return float((xc @ yc) / math.sqrt((xc @ xc) * (yc @ yc)))


def brute_force_itemsets(transactions, min_support):
    txns = [frozenset(t) for t in transactions]
    items = sorted(set().union(*txns))
    n = len(txns)
    found = {}
    for k in range(1, len(items) + 1):
        for combo in combinations(items, k):
            c = sum(1 for t in txns if set(combo) <= t)
            if c / n >= min_support - 1e-12:
                found[combo] = c
    return found


def test_phi_hand_case():
    docs = [["t"]] * 3 + [[]] + [["t"]] + [[]] * 3
    labels = [H] * 4 + [B] * 4
    [score] = phi_correlation(docs, labels)
    assert score.contingency == (3, 1, 1, 3)
    assert score.phi == 0.5
    assert pearson([1, 1, 1, 0, 1, 0, 0, 0], [1, 1, 1, 1, 0, 0, 0, 0]) == pytest.approx(0.5, abs=1e-12)


def test_phi_perfect_association():
    [s] = phi_correlation([["x"], ["x"], [], []], [H, H, B, B])
    assert s.phi == 1.0


def test_phi_undefined_marginal_excluded():
    scores = phi_correlation([["x", "y"], ["x"]], [H, B])
    by_term = {s.term: s for s in scores}
    assert by_term["x"].phi is None
    assert by_term["y"].phi == 1.0
    assert [s.term for s in rank_terms(scores)] == ["y"]


def test_phi_length_mismatch():
    with pytest.raises(LengthMismatch):
        phi_correlation([["a"]], [H, B])
    with pytest.raises(LengthMismatch):
        phi_correlation([], [])


def test_contingency_sums_to_corpus_size():
    docs = [["a", "b"], ["a"], ["c"], [], ["b", "c"]]
    labels = [H, B, H, B, H]
    for s in phi_correlation(docs, labels):
        assert sum(s.contingency) == 5


binary_pairs = st.integers(4, 50).flatmap(
    lambda n: st.tuples(st.lists(st.booleans(), min_size=n, max_size=n), st.lists(st.booleans(), min_size=n, max_size=n))
).filter(lambda p: 0 < sum(p[0]) < len(p[0]) and 0 < sum(p[1]) < len(p[1]))


@given(binary_pairs)
def test_phi_matches_pearson(pair):
    present, hateful = pair
    docs = [["t"] if p else [] for p in present]
    labels = [H if h else B for h in hateful]
    [s] = phi_correlation(docs, labels)
    assert abs(s.phi - pearson(present, hateful)) <= 1e-12


@given(binary_pairs)
def test_phi_antisymmetric_under_label_flip(pair):
    present, hateful = pair
    docs = [["t"] if p else [] for p in present]
    a = phi_correlation(docs, [H if h else B for h in hateful])
    b = phi_correlation(docs, [B if h else H for h in hateful])
    assert [s.phi for s in a] == pytest.approx([-s.phi for s in b], abs=1e-15)


def test_rank_terms():
    mk = lambda t, p: PhiScore(t, p, 0, 0, 0, 0)
    assert [s.term for s in rank_terms([mk("a", 0.3), mk("b", 0.5)], 10)] == ["b", "a"]
    assert [s.term for s in rank_terms([mk("x", 0.2), mk("w", 0.2)], 10)] == ["w", "x"]
    assert rank_terms([], 10) == []
    assert len(rank_terms([mk(c, 0.1) for c in "abcdef"], 3)) == 3
    with pytest.raises(ValueError):
        rank_terms([], 0)


def test_apriori_small_example():
    txns = [{"A", "B", "C"}, {"A", "B"}, {"A", "C"}, {"B", "C"}]
    got = [(s.items, s.support) for s in apriori(txns, 0.5)]
    assert got == [
        (("A",), 0.75),
        (("B",), 0.75),
        (("C",), 0.75),
        (("A", "B"), 0.5),
        (("A", "C"), 0.5),
        (("B", "C"), 0.5),
    ]
    assert brute_force_itemsets(txns, 0.5) == {s.items: s.count for s in apriori(txns, 0.5)}


def test_apriori_single_transaction_and_errors():
    assert apriori([{"X"}], 1.0) == [Itemset(("X",), 1.0, 1)]
    with pytest.raises(ValueError):
        apriori([], 0.5)
    for bad in (0, -0.1, 1.5):
        with pytest.raises(InvalidSupport):
            apriori([{"X"}], bad)


def test_apriori_output_order():
    txns = [{"a", "b"}, {"b"}, {"b", "c"}, {"a", "b", "c"}]
    out = apriori(txns, 0.25)
    keys = [(len(s.items), -s.support, s.items) for s in out]
    assert keys == sorted(keys)


transactions_st = st.lists(
    st.sets(st.sampled_from([f"i{k:02d}" for k in range(12)]), max_size=8), min_size=1, max_size=20
)


@settings(max_examples=150, deadline=None)
@given(transactions_st, st.sampled_from([0.1, 0.25, 0.3, 0.5, 0.75, 1.0]))
def test_apriori_equals_brute_force(txns, min_support):
    out = apriori(txns, min_support)
    assert {s.items: s.count for s in out} == brute_force_itemsets(txns, min_support)
    got = {s.items for s in out}
    for items in got:
        # downward closure
        for k in range(1, len(items)):
            assert all(sub in got for sub in combinations(items, k))
    for s in out:
        assert s.support == s.count / len(txns)


def test_apriori_count_partition_independent():
    txns = [{"a", "b"}, {"a"}, {"b", "c"}, {"a", "b", "c"}, {"c"}, {"a", "c"}]
    whole = apriori(txns, 0.3)
    assert apriori(list(reversed(txns)), 0.3) == whole


def test_lexicon_defaults():
    lex = default_lexicon()
    assert lex.entries == {
        "google": "black",
        "yahoo": "mexican",
        "skype": "jew",
        "bing": "chinese",
        "skittle": "muslim",
        "butterfly": "gay",
    }


def test_lexicon_keys_lemmatized(tmp_path):
    p = tmp_path / "lex.json"
    p.write_text('{"Skypes": "jew", "googles": "black"}')
    assert set(load_lexicon(p).entries) == {"skype", "google"}
    p.write_text('{"skype": "jew", "skypes": "jew"}')
    with pytest.raises(ValueError):
        load_lexicon(p)
    p.write_text("{}")
    with pytest.raises(ValueError):
        load_lexicon(p)


def test_cooccurrence_hand_case():
    lex = CodewordLexicon.from_mapping({"google": "black", "skype": "jew", "bing": "chinese"})
    docs = [["google", "skype", "gas"]] * 3 + [["google"]] * 2 + [["skype", "mom"]] * 2 + [[]] * 3
    table = {e.pair: e.percentage for e in cooccurrence(docs, lex)}
    assert table[frozenset({"google", "skype"})] == 30.0
    assert table[frozenset({"bing", "google"})] == 0.0
    assert len(table) == 3


def test_cooccurrence_matches_plurals():
    from hatecode.textprep import preprocess

    lex = default_lexicon()
    docs = [preprocess("googles and butterflies and skypes"), preprocess("skittles everywhere")]
    table = {e.pair: e.percentage for e in cooccurrence(docs, lex)}
    assert table[frozenset({"google", "butterfly"})] == 50.0
    assert table[frozenset({"google", "skype"})] == 50.0
    assert table[frozenset({"skittle", "skype"})] == 0.0


def test_cooccurrence_no_pairs():
    lex = default_lexicon()
    entries = cooccurrence([["google"], ["skype"], ["nothing"]], lex)
    assert all(e.percentage == 0.0 for e in entries)
    assert len(entries) == 15


docs_st = st.lists(
    st.lists(st.sampled_from(["google", "skype", "bing", "yahoo", "gas", "mom"]), max_size=5), min_size=1, max_size=15
)


@given(docs_st, st.randoms())
def test_cooccurrence_symmetric_and_permutation_invariant(docs, rnd):
    lex = CodewordLexicon.from_mapping({"google": "b", "skype": "j", "bing": "c", "yahoo": "m"})
    base = {e.pair: e.percentage for e in cooccurrence(docs, lex)}
    shuffled = list(docs)
    rnd.shuffle(shuffled)
    assert {e.pair: e.percentage for e in cooccurrence(shuffled, lex)} == base
    reversed_lex = CodewordLexicon(dict(reversed(list(lex.entries.items()))))
    assert {e.pair: e.percentage for e in cooccurrence(docs, reversed_lex)} == base
    for pair, pct in base.items():
        a, b = sorted(pair)
        # recount by hand
        assert pct == 100.0 * sum(1 for d in docs if a in d and b in d) / len(docs)


def test_phi_from_counts_zero_marginal():
    assert phi_from_counts(3, 1, 1, 3) == 0.5
    assert phi_from_counts(0, 0, 4, 4) is None
    assert phi_from_counts(2, 2, 2, 2) == 0.0
