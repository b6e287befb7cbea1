import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hatecode.errors import EmptyVocabulary
from hatecode.features import Vocabulary, build_vocabulary, vectorize, vectorize_many


def test_min_df_prunes():
    v = build_vocabulary([["gas", "skype"], ["gas"], ["white"]], min_df=2, max_terms=10)
    assert v.terms == ("gas",)
    assert v.doc_freq == {"gas": 2}


def test_singleton():
    assert build_vocabulary([["a"]], min_df=1, max_terms=1).terms == ("a",)


def test_cap_and_tie_break():
    v = build_vocabulary([["a", "b"], ["b", "c"]], min_df=1, max_terms=2)
    assert v.terms == ("b", "a")


def test_doc_frequency_not_raw_counts():
    v = build_vocabulary([["x", "x", "x"], ["y"], ["y"]], min_df=1, max_terms=10)
    assert v.terms == ("y", "x")
    assert v.doc_freq["x"] == 1


def test_empty_vocabulary():
    with pytest.raises(EmptyVocabulary):
        build_vocabulary([["a"], ["b"]], min_df=2, max_terms=5)
    with pytest.raises(EmptyVocabulary):
        build_vocabulary([], min_df=1, max_terms=5)


def test_mentions_can_be_excluded():
    docs = [["@bob", "gas"], ["@bob", "gas"]]
    assert build_vocabulary(docs, 1, 10, exclude_mentions=True).terms == ("gas",)
    assert build_vocabulary(docs, 1, 10).terms == ("@bob", "gas")


def test_bad_bounds():
    with pytest.raises(ValueError):
        build_vocabulary([["a"]], min_df=0, max_terms=1)
    with pytest.raises(ValueError):
        build_vocabulary([["a"]], min_df=1, max_terms=0)


def _vocab(*terms):
    return Vocabulary(tuple(terms), {t: 1 for t in terms}, 1, len(terms))


def test_vectorize_examples():
    v = _vocab("gas", "skype", "white")
    assert vectorize(["gas", "skype"], v).bits.tolist() == [True, True, False]
    assert vectorize([], v).bits.tolist() == [False, False, False]
    assert vectorize(["gas", "gas", "gas"], v).bits.tolist() == [True, False, False]
    assert vectorize(["unknown"], v).bits.tolist() == [False, False, False]


def test_index_inverse_of_terms():
    v = build_vocabulary([["c", "a"], ["b", "a"], ["c"]], 1, 10)
    assert all(v.terms[i] == t for t, i in v.index.items())
    assert len(v.index) == len(v.terms)


docs_st = st.lists(st.lists(st.sampled_from(list("abcdefghij")), max_size=6), min_size=1, max_size=25)


@given(docs_st, st.integers(1, 4), st.integers(1, 12))
def test_vocabulary_invariants(docs, min_df, max_terms):
    try:
        v = build_vocabulary(docs, min_df, max_terms)
    except EmptyVocabulary:
        assert all(sum(t in d for d in docs) < min_df for t in {t for d in docs for t in d})
        return
    assert len(set(v.terms)) == len(v.terms) <= max_terms
    X = vectorize_many(docs, v)
    for t in v.terms:
        # df is recomputed here by brute force
        df = sum(1 for d in docs if t in d)
        assert v.doc_freq[t] == df >= min_df
        assert X[:, v.index[t]].sum() == df
    assert list(v.terms) == sorted(v.terms, key=lambda t: (-v.doc_freq[t], t))
    assert build_vocabulary(docs, min_df, max_terms).terms == v.terms


@given(st.lists(st.sampled_from(list("abcdefxyz")), max_size=10), st.randoms())
def test_vectorize_depends_only_on_term_set(doc, rnd):
    v = _vocab("a", "b", "c", "d")
    shuffled = list(doc) * 2
    rnd.shuffle(shuffled)
    assert np.array_equal(vectorize(doc, v).bits, vectorize(shuffled, v).bits)
