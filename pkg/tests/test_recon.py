import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from burstrecon.balls import ball_intersection, count_ball, enumerate_ball, reconstruction_degree
from burstrecon.channel import ChannelSpec, ReadSet, generate_reads, make_rng
from burstrecon.codes import Code, construct_gv
from burstrecon.core import ParameterError, Params, Word
from burstrecon.recon import (
    AmbiguousReconstruction,
    CandidateOverflow,
    InconsistentReads,
    MajWord,
    bruteforce_list,
    completeness_threshold,
    consistent_codewords,
    list_decode_bruteforce,
    list_reconstruct,
    list_size_bound,
    list_threshold,
    majority_threshold,
    recommended_reads,
    stars_bound,
    unique_reconstruct,
)

from conftest import W


def random_code(rng, n, q, b, size):
    rows = {tuple(int(v) for v in rng.integers(0, q, n)) for _ in range(size)}
    return Code.from_words([Word(r, q) for r in rows], n, q, b)


# --- majority ----------------------------------------------------------------------


def test_majority_examples():
    assert str(majority_threshold([W("00"), W("01"), W("10")], 0)) == "00"
    assert str(majority_threshold([W("01"), W("10")], 0)) == "**"
    reads = [W("0110")]
    assert str(majority_threshold(reads, 0)) == "0110"
    assert str(majority_threshold(reads, Fraction(9, 10))) == "0110"


def test_majority_boundary_is_strict():
    # counts 3 of 4; threshold (4 + 2)/2 = 3 is not exceeded
    reads = [W("1"), W("1"), W("1"), W("0")]
    with pytest.raises(ParameterError):
        majority_threshold(reads, 0)  # duplicates rejected
    reads = [W("10"), W("11"), W("00"), W("01")]
    assert majority_threshold(reads, 0).stars == [0, 1]
    reads = [W("100"), W("101"), W("110"), W("011")]
    assert str(majority_threshold(reads, 2)) == "***"
    assert str(majority_threshold(reads, Fraction(19, 10))) == "1**"


def test_majword_text_for_larger_alphabet():
    assert str(MajWord((10, None, 3))) == "a*3"


@given(st.integers(1, 4), st.data())
def test_majority_tau_zero_odd_reads_is_plain_majority(k, data):
    n = 6
    N = 2 * k + 1
    pool = list(itertools.product(range(2), repeat=n))
    idx = data.draw(st.lists(st.integers(0, len(pool) - 1), min_size=N, max_size=N, unique=True))
    reads = [Word(pool[i], 2) for i in idx]
    z = majority_threshold(reads, 0)
    for j in range(n):
        ones = sum(r[j] for r in reads)
        assert z.symbols[j] == (1 if ones > N / 2 else 0)


# --- list decoding and unique reconstruction ---------------------------------------------


def test_list_decode_examples():
    rng = np.random.default_rng(0)
    code = random_code(rng, 10, 2, 2, 60)
    u = code.word_list()[5]
    assert list_decode_bruteforce(code, u, 0) == {u}
    assert list_decode_bruteforce(code, u, 5).words == code.words.words
    for radius in (1, 2):
        assert list_decode_bruteforce(code, u, radius).words == enumerate_ball(u, radius, 2).words & code.words.words


def test_unique_single_read_for_correcting_code():
    code = construct_gv(Params(n=10, q=2, b=2), 1)
    spec = ChannelSpec(10, 2, 1, 2, seed=4)
    rng = spec.rng()
    for x in code.word_list()[:10]:
        reads = generate_reads(x, spec, 1, rng)
        assert unique_reconstruct(code, reads, 1) == x


def test_unique_ambiguity_and_inconsistency():
    x, y = W("00000000"), W("11000000")
    code = Code.from_words([x, y], 8, 2, 1)
    common = ball_intersection(x, y, 1, 1)
    with pytest.raises(AmbiguousReconstruction) as info:
        unique_reconstruct(code, ReadSet(tuple(common)), 1)
    assert info.value.candidates == {x, y}
    with pytest.raises(InconsistentReads):
        unique_reconstruct(code, [W("00111100")], 1)


def test_degree_reads_always_unique():
    rng = np.random.default_rng(11)
    code = random_code(rng, 8, 2, 1, 12)
    t = 1
    deg = reconstruction_degree(code, t, 1)
    spec = ChannelSpec(8, 2, t, 1)
    words = code.word_list()
    for k in range(60):
        x = words[k % len(words)]
        other = words[(k + 1) % len(words)]
        reads = generate_reads(x, spec, deg, rng, adversary=other)
        assert unique_reconstruct(code, reads, t) == x


# --- list reconstruction ----------------------------------------------------------------


def test_formula_helpers():
    assert list_threshold(2, 2, 1, 1, 1) == Fraction(2, 4) * 2 == 1
    assert stars_bound(2, 1, 1, 1) == 2 * 4
    assert completeness_threshold(2, 1, 2, 1, 1) == 256
    assert list_size_bound(300, 2, 1, 2, 1, 1) == 2 * 2**21 * 300
    assert list_size_bound(300, 2, 1, 3, 2, 2) // list_size_bound(300, 2, 1, 3, 2, 1) == 300 * 2
    assert list_size_bound(10, 2, 1, 2, 2, 2) == 2 * 2**22 * 100
    with pytest.raises(ParameterError):
        list_size_bound(10, 2, 1, 2, 1, 0)
    assert recommended_reads(300, 2, 1, 1, 1) == 2


def test_list_all_reads_equal_codeword():
    code = construct_gv(Params(n=10, q=2, b=1), 1)
    x = code.word_list()[3]
    res = list_reconstruct(code, [x], 2, 0, 0)
    assert x in res.codewords
    res = list_reconstruct(code, [x], 2, 1, 1)
    assert x in res.codewords and res.stats["stars"] == 0


def test_list_h0_delegates_to_unique_list():
    code = construct_gv(Params(n=10, q=2, b=1), 1)
    x = code.word_list()[7]
    reads = generate_reads(x, ChannelSpec(10, 2, 2, 1, seed=1), 3)
    res = list_reconstruct(code, reads, 2, 0, 0)
    assert res.stats["delegated"] == "unique"
    assert res.codewords == consistent_codewords(code, reads, 2)


def test_list_rejects_non_correcting_code():
    code = Code.from_words([W("000000000"), W("100000000")], 9, 2, 1)
    with pytest.raises(ParameterError):
        list_reconstruct(code, [W("000000000")], 3, 1, 1)


def test_candidate_cap():
    rng = np.random.default_rng(3)
    code = random_code(rng, 40, 2, 1, 20)
    # reads that disagree everywhere leave every coordinate starred
    reads = [Word(tuple(int(v) for v in rng.integers(0, 2, 40)), 2) for _ in range(2)]
    reads = [reads[0], Word(tuple(1 - v for v in reads[0].symbols), 2)]
    with pytest.raises(CandidateOverflow, match="40"):
        list_reconstruct(code, reads, 2, 1, 1, validate=False)


@pytest.mark.parametrize("n", [300, 512])
def test_list_equals_bruteforce_in_regime(n):
    rng = make_rng(n)
    t, s, h, b, q = 2, 1, 1, 1, 2
    spec = ChannelSpec(n, q, t, b)
    for _ in range(25):
        code = random_code(rng, n, q, b, int(rng.integers(50, 300)))
        words = code.word_list()
        x = words[int(rng.integers(len(words)))]
        # plant codewords near x so that lists are not trivially {x}
        extra = [generate_reads(x, ChannelSpec(n, q, 4, b), 1, rng).reads[0] for _ in range(10)]
        code = Code.from_words(set(words) | set(extra), n, q, b)
        reads = generate_reads(x, spec, 2, rng)
        res = list_reconstruct(code, reads, t, s, h)
        assert res.codewords == bruteforce_list(code, reads, t)
        assert res.stats["stars"] <= stars_bound(t, s, h, b)
        assert len(res) <= list_size_bound(n, q, b, t, s, h)


@settings(max_examples=40)
@given(st.integers(0, 2**31), st.sampled_from([(2, 1, 1, 1, 2), (2, 1, 1, 2, 2), (3, 2, 1, 1, 2), (2, 1, 1, 1, 3)]))
def test_list_soundness_small_n(seed, params):
    t, s, h, b, q = params
    rng = make_rng(seed)
    n = max(2 * t * b, 8) + int(rng.integers(0, 6))
    code = random_code(rng, n, q, b, 40)
    if t - s - 1 > 0:
        code = construct_gv(Params(n=n, q=q, b=b), t - s - 1, "random", seed=seed, budget=200)
    words = code.word_list()
    x = words[int(rng.integers(len(words)))]
    N = min(recommended_reads(n, q, b, s, h), count_ball(t, b, n, q))
    reads = generate_reads(x, ChannelSpec(n, q, t, b), N, rng)
    res = list_reconstruct(code, reads, t, s, h)
    truth = bruteforce_list(code, reads, t)
    assert res.codewords <= truth
    assert x in truth
