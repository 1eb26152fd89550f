import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from burstrecon.core import (
    BurstError,
    CyclicInterval,
    ErrorPattern,
    ParameterError,
    Params,
    Word,
    burst_distance,
    burst_distance_oracle,
    burst_weight,
    burst_weights,
    burst_weights_oracle,
    decompose_disjoint,
    hamming_distance,
    interval_gap,
    support,
)

from conftest import W, all_words, word_pairs, words


# --- words and parameters ------------------------------------------------------


def test_word_text_roundtrip():
    w = Word.parse("0a3", 11)
    assert w.symbols == (0, 10, 3)
    assert str(w) == "0a3"


def test_word_rejects_out_of_alphabet():
    with pytest.raises(ParameterError):
        Word((0, 2), 2)
    with pytest.raises(ParameterError):
        Word.parse("012", 2)


def test_word_arithmetic_mod_q():
    x, y = Word((1, 2, 0), 3), Word((2, 2, 1), 3)
    assert (x + y).symbols == (0, 1, 1)
    assert (x - y).symbols == (2, 0, 2)
    assert (-x).symbols == (2, 1, 0)


def test_length_mismatch_rejected():
    with pytest.raises(ParameterError):
        burst_distance(W("010"), W("0101"), 1)
    with pytest.raises(ParameterError):
        burst_distance(Word((0, 1), 2), Word((0, 1), 3), 1)


def test_params_validation():
    assert Params(n=10, q=2, b=2, t=2).decomposition_regime
    assert not Params(n=7, q=2, b=2, t=2).decomposition_regime
    with pytest.raises(ParameterError):
        Params(n=10, q=1)
    with pytest.raises(ParameterError):
        Params(n=10, q=2, t=2, s=2)
    with pytest.raises(ParameterError):
        Params(n=10, q=2, t=3, s=1, h=2)


# --- support and intervals -----------------------------------------------------


def test_support_examples():
    assert support(W("01011")) == {2, 4, 5}
    assert support(W("00000")) == set()
    assert support(Word.parse("20100", 3)) == {1, 3}


def test_interval_gap_examples():
    assert interval_gap(CyclicInterval.from_bounds(2, 2, 5), CyclicInterval.from_bounds(4, 5, 5)) == 1
    assert interval_gap(CyclicInterval.from_bounds(1, 2, 6), CyclicInterval.from_bounds(2, 3, 6)) < 0
    assert interval_gap(CyclicInterval.from_bounds(1, 1, 6), CyclicInterval.from_bounds(3, 3, 6)) == 1


def test_interval_gap_wraps_the_short_way():
    # [5,6] and [2,2] on n=6: one cell (1) between them going forward past n
    a, c = CyclicInterval.from_bounds(5, 6, 6), CyclicInterval.from_bounds(2, 2, 6)
    assert interval_gap(a, c) == 1
    assert interval_gap(c, a) == 1


def test_wrap_interval_membership():
    iv = CyclicInterval.from_bounds(6, 1, 6)
    assert iv.length == 2 and iv.end == 1
    assert 6 in iv and 1 in iv and 2 not in iv
    assert str(iv) == "[6,1]"


def test_extension():
    iv = CyclicInterval.from_bounds(4, 5, 10)
    ext = iv.extension(1, 2)
    assert (ext.start, ext.end, ext.length) == (2, 7, 6)
    assert iv.extension(5, 2).length == 10


@given(st.integers(3, 12), st.data())
def test_gap_symmetric_and_sign(n, data):
    s1, s2 = data.draw(st.integers(1, n)), data.draw(st.integers(1, n))
    l1, l2 = data.draw(st.integers(1, n)), data.draw(st.integers(1, n))
    a, c = CyclicInterval(s1, l1, n), CyclicInterval(s2, l2, n)
    g = interval_gap(a, c)
    assert g == interval_gap(c, a)
    assert (g < 0) == bool(set(a.indices()) & set(c.indices()))


# --- burst errors ------------------------------------------------------------------


def test_burst_requires_nonzero_ends():
    with pytest.raises(ParameterError):
        BurstError(CyclicInterval(1, 2, 5), (1, 0))
    BurstError(CyclicInterval(1, 3, 5), (1, 0, 1))


def test_error_pattern_rejects_overlap():
    a = BurstError(CyclicInterval(1, 2, 6), (1, 1))
    c = BurstError(CyclicInterval(2, 2, 6), (1, 1))
    with pytest.raises(ParameterError):
        ErrorPattern((a, c))


# --- burst distance ------------------------------------------------------------------


@pytest.mark.parametrize(
    "x, y, b, expected",
    [
        ("01011", "00000", 2, 2),
        ("100001", "000000", 2, 1),
        ("110110", "110110", 3, 0),
        ("111111", "000000", 2, 3),
        ("110000", "000000", 2, 1),
    ],
)
def test_distance_examples(x, y, b, expected):
    assert burst_distance(W(x), W(y), b) == expected
    assert burst_distance_oracle(W(x), W(y), b) == expected


def test_b1_is_hamming():
    x, y = Word.parse("012210", 3), Word.parse("002201", 3)
    assert burst_distance(x, y, 1) == hamming_distance(x, y) == 3


def test_window_wraps_below_index_one():
    # support {1, 2, 7}, n=8, b=3: the cyclic span 7..2 has 4 cells, so two bursts
    w = W("11000010")
    assert burst_weight(w, 3) == burst_distance_oracle(w, Word.zeros(8, 2), 3) == 2
    # support {1, 7, 8}: one wrap-around burst [7,1]
    assert burst_weight(W("10000011"), 3) == 1


def test_exhaustive_agreement_small():
    for n in range(1, 9):
        allw = np.array(list(itertools.product(range(2), repeat=n)), dtype=np.int16)
        for b in (1, 2, 3):
            fast = burst_weights(allw, b)
            slow = burst_weights_oracle(allw, b)
            assert np.array_equal(fast, slow), (n, b)
            scalar = [burst_weight(Word(tuple(int(v) for v in r), 2), b) for r in allw]
            assert np.array_equal(fast, scalar), (n, b)


@given(word_pairs(), st.integers(1, 4))
def test_scalar_matches_oracle(pair, b):
    x, y = pair
    assert burst_distance(x, y, b) == burst_distance_oracle(x, y, b)


@given(word_pairs(), st.integers(1, 4))
def test_metric_symmetry_and_identity(pair, b):
    x, y = pair
    d = burst_distance(x, y, b)
    assert d == burst_distance(y, x, b)
    assert (d == 0) == (x == y)


@given(st.data(), st.integers(1, 4))
def test_triangle_inequality(data, b):
    n = data.draw(st.integers(1, 10))
    q = data.draw(st.sampled_from([2, 3]))
    x, y, z = (data.draw(words(n=n, q=q)) for _ in range(3))
    assert burst_distance(x, z, b) <= burst_distance(x, y, b) + burst_distance(y, z, b)


@given(st.data(), st.integers(1, 4))
def test_translation_invariance(data, b):
    n = data.draw(st.integers(1, 10))
    q = data.draw(st.sampled_from([2, 3, 4]))
    x, y, z = (data.draw(words(n=n, q=q)) for _ in range(3))
    assert burst_distance(x + z, y + z, b) == burst_distance(x, y, b)


@given(word_pairs(), st.integers(1, 4))
def test_monotone_in_b_and_bounded_by_hamming(pair, b):
    x, y = pair
    d_small, d_big = burst_distance(x, y, b), burst_distance(x, y, b + 1)
    assert d_big <= d_small <= hamming_distance(x, y)
    assert hamming_distance(x, y) <= b * d_small


@given(words(), st.integers(0, 12))
def test_rotation_invariance(w, k):
    n = len(w)
    k %= n
    rot = Word(w.symbols[k:] + w.symbols[:k], w.q)
    for b in (1, 2, 3):
        assert burst_weight(rot, b) == burst_weight(w, b)


def test_b_at_least_n_is_single_burst():
    assert burst_weight(W("10101"), 5) == 1
    assert burst_weight(W("10101"), 9) == 1


def test_batch_accepts_single_row():
    assert burst_weights(np.array([0, 1, 1, 0, 1]), 2).tolist() == [2]


# --- decomposition --------------------------------------------------------------------


def test_decompose_examples():
    pat = decompose_disjoint(W("01011"), 2)
    assert [str(bu.interval) for bu in pat.bursts] == ["[2,2]", "[4,5]"]
    assert len(decompose_disjoint(W("00000"), 2)) == 0
    pat = decompose_disjoint(W("100001"), 2)
    assert [str(bu.interval) for bu in pat.bursts] == ["[6,1]"]


@given(words(), st.integers(1, 4))
def test_decompose_roundtrip(w, b):
    pat = decompose_disjoint(w, b)
    assert len(pat) == burst_weight(w, b)
    assert pat.to_word(len(w), w.q) == w
    assert pat.max_length() <= b if len(pat) else True
    for bu in pat.bursts:
        assert bu.values[0] != 0 and bu.values[-1] != 0


def test_decompose_exhaustive_small():
    for n in range(1, 8):
        for w in all_words(n, 2):
            for b in (1, 2, 3):
                pat = decompose_disjoint(w, b)
                assert pat.to_word(n, 2) == w
                assert len(pat) == burst_weight(w, b)
