"""Unique and list reconstruction from N distinct reads.

``list_reconstruct`` is the majority-with-threshold scheme: take the
coordinatewise majority of the reads with threshold (N + tau)/2, mark weak
coordinates with a star, try every filling of the stars, list-decode each
filling at radius t - s + h, and keep the codewords consistent with all
reads.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .balls import WordSet, count_ball
from .codes import Code, check_burst_code
from .core import DIGITS, ParameterError, Word, burst_distance_oracle, burst_weights

STAR = None
DEFAULT_CANDIDATE_BITS = 24


class InconsistentReads(ValueError):
    """No codeword has every read inside its radius-t ball."""


class AmbiguousReconstruction(Exception):
    def __init__(self, candidates: WordSet):
        self.candidates = candidates
        super().__init__(f"{len(candidates)} codewords are consistent with the reads")


class CandidateOverflow(ValueError):
    pass


@dataclass(frozen=True)
class MajWord:
    symbols: tuple  # ints, or None for a star

    @property
    def stars(self) -> list[int]:
        """0-based star positions."""
        return [j for j, v in enumerate(self.symbols) if v is None]

    def __str__(self):
        return "".join("*" if v is None else DIGITS[v] for v in self.symbols)


@dataclass
class ListResult:
    codewords: WordSet
    stats: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.codewords)


def _reads_matrix(reads) -> tuple[np.ndarray, int]:
    reads = list(getattr(reads, "reads", reads))
    if not reads:
        raise ParameterError("need at least one read")
    if len(set(reads)) != len(reads):
        raise ParameterError("reads must be pairwise distinct")
    q = reads[0].q
    return np.array([r.symbols for r in reads], dtype=np.int16), q


def majority_threshold(reads, tau) -> MajWord:
    """Coordinatewise majority, starred where no count exceeds (N + tau)/2."""
    Y, q = _reads_matrix(reads)
    tau = Fraction(tau)
    if tau < 0:
        raise ParameterError("tau must be non-negative")
    N = len(Y)
    counts = np.stack([(Y == c).sum(axis=0) for c in range(q)])  # (q, n)
    top = counts.argmax(axis=0)
    best = counts.max(axis=0)
    out = []
    for j in range(Y.shape[1]):
        # m > (N + tau)/2  <=>  2m - N > tau, exactly
        out.append(int(top[j]) if 2 * int(best[j]) - N > tau else None)
    return MajWord(tuple(out))


def list_decode_bruteforce(code: Code, u: Word, radius: int, b: int | None = None) -> WordSet:
    """LD_C(u) = C & Ball_{radius,b}(u), by scanning the code."""
    b = code.b if b is None else b
    M = code.matrix()
    if len(M) == 0:
        return WordSet(code.n, code.q, frozenset())
    words = code.word_list()
    hits = _scan(M, np.array(u.symbols, dtype=np.int16), code.q, b, radius)
    return WordSet(code.n, code.q, frozenset(words[i] for i in hits))


def _scan(M: np.ndarray, u: np.ndarray, q: int, b: int, radius: int) -> np.ndarray:
    diff = (M - u) % q
    # d_b(c, u) <= radius forces at most radius*b differing cells
    near = np.flatnonzero(np.count_nonzero(diff, axis=1) <= radius * b)
    if len(near) == 0:
        return near
    return near[burst_weights(diff[near], b) <= radius]


def consistent_codewords(code: Code, reads, t: int, b: int | None = None) -> WordSet:
    """C & (intersection of Ball_{t,b}(y) over all reads), by scanning C."""
    b = code.b if b is None else b
    Y, q = _reads_matrix(reads)
    M = code.matrix()
    words = code.word_list()
    alive = np.arange(len(M))
    for y in Y:
        if len(alive) == 0:
            break
        alive = alive[_scan(M[alive], y, q, b, t)]
    return WordSet(code.n, code.q, frozenset(words[i] for i in alive))


def unique_reconstruct(code: Code, reads, t: int, b: int | None = None) -> Word:
    """The only codeword consistent with all reads.

    Raises AmbiguousReconstruction (carrying the candidate set) when more
    than one codeword fits, InconsistentReads when none does.
    """
    found = consistent_codewords(code, reads, t, b)
    if len(found) == 0:
        raise InconsistentReads("no codeword is within radius t of every read")
    if len(found) > 1:
        raise AmbiguousReconstruction(found)
    return next(iter(found))


def list_threshold(N: int, t: int, s: int, h: int, b: int) -> Fraction:
    """tau = (1 - 2/((t-s+h+1)b + 1)) N."""
    return (1 - Fraction(2, (t - s + h + 1) * b + 1)) * N


def stars_bound(t: int, s: int, h: int, b: int) -> int:
    """b t ((t-s+h+1)b + 1): the most stars reads from one ball can leave."""
    return b * t * ((t - s + h + 1) * b + 1)


def completeness_threshold(q: int, b: int, t: int, s: int, h: int) -> int:
    """max{4b(s-h), s^2 q^(3bt) (4s-4h)^(s-h) ((t-s+h+1)b+1)}."""
    return max(
        4 * b * (s - h),
        s**2 * q ** (3 * b * t) * (4 * s - 4 * h) ** (s - h) * ((t - s + h + 1) * b + 1),
    )


def list_size_bound(n: int, q: int, b: int, t: int, s: int, h: int) -> int:
    """t q^(b(h + 10t)) n^h."""
    if not t >= s >= h >= 1:
        raise ParameterError(f"need t >= s >= h >= 1, got t={t}, s={s}, h={h}")
    return t * q ** (b * (h + 10 * t)) * n**h


def recommended_reads(n: int, q: int, b: int, s: int, h: int) -> int:
    """|Ball_{s-h,b}(0)| + 1."""
    return count_ball(s - h, b, n, q) + 1


def list_reconstruct(
    code: Code,
    reads,
    t: int,
    s: int,
    h: int,
    b: int | None = None,
    *,
    max_candidate_bits: int = DEFAULT_CANDIDATE_BITS,
    validate: bool = True,
) -> ListResult:
    """List-reconstruct with a (t-s-1, b)-burst-correcting code over ch(t, b)."""
    b = code.b if b is None else b
    if not t >= s >= h >= 0:
        raise ParameterError(f"need t >= s >= h >= 0, got t={t}, s={s}, h={h}")
    if validate and s <= t - 1:
        ok, witness = check_burst_code(code, t - s - 1)
        if not ok:
            a, c = witness
            raise ParameterError(f"code is not ({t - s - 1},{b})-burst-correcting: {a} vs {c}")
    Y, q = _reads_matrix(reads)
    N = len(Y)
    if h == 0:
        found = consistent_codewords(code, reads, t, b)
        return ListResult(found, {"reads": N, "tau": None, "stars": 0, "candidates": 0,
                                  "decoder_calls": 0, "delegated": "unique"})

    tau = list_threshold(N, t, s, h, b)
    z = majority_threshold(reads, tau)
    S = z.stars
    if len(S) * math.log2(q) > max_candidate_bits:
        raise CandidateOverflow(
            f"|S|={len(S)} star positions exceed the {max_candidate_bits}-bit candidate cap "
            f"(theory bounds |S| by {stars_bound(t, s, h, b)} for reads from one ball)"
        )
    base = np.array([0 if v is None else v for v in z.symbols], dtype=np.int16)
    radius = t - s + h
    M = code.matrix()
    words = code.word_list()
    found: set[int] = set()
    calls = 0
    for fill in itertools.product(range(q), repeat=len(S)):
        u = base.copy()
        u[S] = fill
        found.update(int(i) for i in _scan(M, u, q, b, radius))
        calls += 1
    # keep only codewords whose radius-t ball holds every read
    survivors = []
    for i in sorted(found):
        if burst_weights((Y - M[i]) % q, b).max() <= t:
            survivors.append(words[i])
    stats = {
        "reads": N,
        "tau": str(tau),
        "stars": len(S),
        "candidates": q ** len(S),
        "decoder_calls": calls,
        "pre_filter": len(found),
    }
    return ListResult(WordSet(code.n, code.q, frozenset(survivors)), stats)


def bruteforce_list(code: Code, reads, t: int, b: int | None = None) -> WordSet:
    """Test oracle: the true list via the rotation-greedy distance, word by word."""
    b = code.b if b is None else b
    reads = list(getattr(reads, "reads", reads))
    M = code.matrix()
    Y = np.array([r.symbols for r in reads], dtype=np.int16)
    out = []
    for w, row in zip(code.word_list(), M):
        # cheap necessary condition first: at most t*b differing cells per read
        if (np.count_nonzero(Y != row, axis=1) > t * b).any():
            continue
        if all(burst_distance_oracle(w, y, b) <= t for y in reads):
            out.append(w)
    return WordSet(code.n, code.q, frozenset(out))
