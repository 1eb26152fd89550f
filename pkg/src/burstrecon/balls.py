"""Burst error balls: enumeration, counting, intersections, diameter and shifting."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

import numpy as np

from .core import (
    ParameterError,
    Word,
    burst_distance,
    burst_weights,
    words_matrix,
)


@dataclass(frozen=True)
class WordSet:
    """A finite set of distinct words sharing n and q. Iteration is sorted."""

    n: int
    q: int
    words: frozenset

    def __post_init__(self):
        if not isinstance(self.words, frozenset):
            object.__setattr__(self, "words", frozenset(self.words))
        for w in self.words:
            if len(w) != self.n or w.q != self.q:
                raise ParameterError(f"word {w} does not match n={self.n}, q={self.q}")

    @classmethod
    def of(cls, words: Iterable[Word], n: int | None = None, q: int | None = None) -> WordSet:
        words = frozenset(words)
        if n is None or q is None:
            if not words:
                raise ParameterError("n and q are required for an empty WordSet")
            sample = next(iter(words))
            n = len(sample) if n is None else n
            q = sample.q if q is None else q
        return cls(n, q, words)

    def __len__(self):
        return len(self.words)

    def __iter__(self) -> Iterator[Word]:
        return iter(sorted(self.words))

    def __contains__(self, w) -> bool:
        return w in self.words

    def __eq__(self, other):
        if isinstance(other, WordSet):
            return (self.n, self.q, self.words) == (other.n, other.q, other.words)
        if isinstance(other, (set, frozenset)):
            return self.words == other
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.q, self.words))

    def __and__(self, other: WordSet) -> WordSet:
        return WordSet(self.n, self.q, self.words & other.words)

    def __or__(self, other: WordSet) -> WordSet:
        return WordSet(self.n, self.q, self.words | other.words)

    def __le__(self, other: WordSet) -> bool:
        return self.words <= other.words

    def matrix(self) -> np.ndarray:
        if not self.words:
            return np.zeros((0, self.n), dtype=np.int16)
        return words_matrix(self)


# --- enumeration -----------------------------------------------------------


@lru_cache(maxsize=None)
def _burst_values(length: int, q: int) -> tuple[tuple[int, ...], ...]:
    """All value strings of the given length whose two ends are nonzero."""
    if length == 1:
        return tuple((a,) for a in range(1, q))
    inner = list(itertools.product(range(q), repeat=length - 2))
    return tuple(
        (a, *mid, c) for a in range(1, q) for mid in inner for c in range(1, q)
    )


def _error_offsets(n: int, q: int, t: int, b: int) -> set[tuple[int, ...]]:
    """Every vector that is a sum of at most t disjoint nonzero-ended bursts.

    Placements are generated left to right: starts p_1 < ... < p_k with
    lengths l_i <= b, each interval ending before the next starts and the
    last one ending before p_1 + n.
    """
    vec = [0] * n
    out = {tuple(vec)}

    def place(first: int, lo: int, left: int):
        for p in range(lo, n):
            for length in range(1, min(b, n) + 1):
                last = p + length - 1
                if first >= 0 and last >= first + n:
                    break
                if first < 0 and last >= p + n:
                    break
                cells = [(p + k) % n for k in range(length)]
                for vals in _burst_values(length, q):
                    for c, v in zip(cells, vals):
                        vec[c] = v
                    out.add(tuple(vec))
                    if left > 1:
                        place(p if first < 0 else first, last + 1, left - 1)
                for c in cells:
                    vec[c] = 0

    if t > 0:
        place(-1, 0, t)
    return out


@lru_cache(maxsize=64)
def ball_offsets(n: int, q: int, t: int, b: int) -> np.ndarray:
    """Rows of B_{<=t,<=b}(n, q) as a sorted int16 matrix (cached)."""
    rows = sorted(_error_offsets(n, q, t, b))
    arr = np.array(rows, dtype=np.int16).reshape(len(rows), n)
    arr.setflags(write=False)
    return arr


def _check_regime(n: int, t: int, b: int):
    if n < 2 * t * b:
        raise ParameterError(f"ball enumeration needs n >= 2tb, got n={n}, t={t}, b={b}")


def enumerate_ball(center: Word, t: int, b: int) -> WordSet:
    """All words within burst distance t of ``center``."""
    n, q = len(center), center.q
    if t < 0 or b < 1:
        raise ParameterError(f"need t >= 0 and b >= 1, got t={t}, b={b}")
    _check_regime(n, t, b)
    c = center.array()
    rows = (ball_offsets(n, q, t, b) + c) % q
    return WordSet(n, q, frozenset(Word(tuple(int(v) for v in r), q) for r in rows))


@dataclass(frozen=True)
class Ball:
    center: Word
    t: int
    b: int

    def __contains__(self, w: Word) -> bool:
        return burst_distance(self.center, w, self.b) <= self.t

    def members(self) -> WordSet:
        return enumerate_ball(self.center, self.t, self.b)

    def __len__(self):
        return count_ball(self.t, self.b, len(self.center), self.center.q)


# --- counting ----------------------------------------------------------------


@lru_cache(maxsize=None)
def count_ball(t: int, b: int, n: int, q: int) -> int:
    """|Ball_{t,b}(0)| over Z_q^n by a transfer-matrix count, exact for every n.

    An optimal cyclic cover either has no interval crossing the n|1 seam, and
    then the linear greedy on cells 0..n-1 is optimal, or exactly one
    interval crosses it; stretched to length b it sits on
    ``[n-o, b-o-1]`` for some o in 1..b-1 and the rest of the support is
    covered greedily on cells ``b-o .. n-o-1``. The DP runs all b greedy
    automata side by side over zero/nonzero support patterns.
    """
    if t < 0:
        return 0
    if n <= b:
        return q**n if t >= 1 else 1
    cap = t + 1
    # automaton o processes cells [lo_o, hi_o); o = 0 is the seam-free cover
    spans = [(0, n)] + [(b - o, n - o) for o in range(1, b)]
    init = tuple((0, 0) if o == 0 else (1, 0) for o in range(b))
    states = {init: 1}
    for j in range(n):
        nxt: dict = {}
        for state, ways in states.items():
            for nonzero, mult in ((False, 1), (True, q - 1)):
                new = []
                for o, (c, r) in enumerate(state):
                    lo, hi = spans[o]
                    if lo <= j < hi:
                        if r > 0:
                            r -= 1
                        elif nonzero:
                            c = min(c + 1, cap)
                            r = b - 1
                    new.append((c, r))
                key = tuple(new)
                nxt[key] = nxt.get(key, 0) + ways * mult
        states = nxt
    return sum(w for st, w in states.items() if min(c for c, _ in st) <= t)


@dataclass(frozen=True)
class BallSize:
    lower: Fraction
    exact: int
    upper: int

    @property
    def sandwiched(self) -> bool:
        return self.lower <= self.exact <= self.upper


def ball_bounds(t: int, b: int, n: int, q: int) -> tuple[Fraction, int]:
    """The non-asymptotic lower and upper bounds on |B_{<=t,<=b}(n, q)|."""
    lower = (
        Fraction(q - 1, q) ** t * (q**b - 1) ** t * math.comb(max(n - (2 * b - 2) * t, 0), t)
    )
    upper = (t + 1) * (q**b - 1) ** t * math.comb(n, t)
    return lower, upper


def ball_size(t: int, b: int, n: int, q: int) -> BallSize:
    """Exact ball size by enumeration, with the sandwich bounds around it (see ``sandwiched``)."""
    _check_regime(n, t, b)
    exact = len(ball_offsets(n, q, t, b))
    lower, upper = ball_bounds(t, b, n, q)
    return BallSize(lower, exact, upper)


# --- intersections -----------------------------------------------------------


def _intersection_rows(x: Word, y: Word, t: int, b: int) -> np.ndarray:
    x._check(y)
    n, q = len(x), x.q
    _check_regime(n, t, b)
    E = ball_offsets(n, q, t, b)
    v = (y.array() - x.array()) % q
    cols = np.flatnonzero(v)
    # Hamming prefilter: e - v differs from 0 in at most tb cells if d_b(e, v) <= t
    inside = E[:, cols]
    diff = len(cols) - np.count_nonzero(inside == v[cols], axis=1)
    diff += _row_weights(n, q, t, b) - np.count_nonzero(inside, axis=1)
    E = E[diff <= t * b]
    E = E[burst_weights((E - v) % q, b) <= t]
    return (E + x.array()) % q


@lru_cache(maxsize=64)
def _row_weights(n: int, q: int, t: int, b: int) -> np.ndarray:
    return np.count_nonzero(ball_offsets(n, q, t, b), axis=1)


def ball_intersection(x: Word, y: Word, t: int, b: int) -> WordSet:
    """Ball_{t,b}(x) intersected with Ball_{t,b}(y)."""
    rows = _intersection_rows(x, y, t, b)
    return WordSet(len(x), x.q, frozenset(Word(tuple(int(v) for v in r), x.q) for r in rows))


def intersection_size(x: Word, y: Word, t: int, b: int) -> int:
    return len(_intersection_rows(x, y, t, b))


def levenshtein_intersection_formula(n: int, q: int, t: int, d: int) -> int:
    """|Ball_{t,1}(u) & Ball_{t,1}(v)| for Hamming distance d(u, v) = d."""
    if d < 0:
        raise ParameterError(f"distance must be non-negative, got {d}")
    if d > 2 * t:
        return 0
    total = 0
    for i in range(t - (d + 1) // 2 + 1):
        inner = 0
        lo = max(d - t + i, 0)
        hi = t - i
        for k in range(lo, min(hi, d) + 1):
            for ell in range(lo, min(hi, d - k) + 1):
                inner += math.comb(d, k) * math.comb(d - k, ell) * (q - 2) ** (d - k - ell)
        total += math.comb(n - d, i) * (q - 1) ** i * inner
    return total


def reconstruction_degree(code, t: int, b: int) -> int:
    """N(C) = 1 + max pairwise |Ball_t(u) & Ball_t(v)|; 1 for codes of size <= 1.

    ``code`` is a Code or any iterable of words. The intersection size only
    depends on v - u (and is unchanged by negating it), so pairs are reduced
    to distinct differences, and differences of burst weight above 2t are
    dropped since their balls cannot meet.
    """
    words = list(getattr(code, "words", code))
    if len(words) <= 1:
        return 1
    n, q = len(words[0]), words[0].q
    _check_regime(n, t, b)
    M = words_matrix(words)
    seen: set[bytes] = set()
    deltas = []
    for i in range(len(M) - 1):
        D = (M[i + 1 :] - M[i]) % q
        D = D[burst_weights(D, b) <= 2 * t]
        for row in np.unique(D, axis=0):
            key = row.tobytes()
            if key in seen:
                continue
            seen.add(key)
            seen.add(((-row) % q).astype(np.int16).tobytes())
            deltas.append(row)
    if not deltas:
        return 1
    offsets = ball_offsets(n, q, t, b)
    best = 0
    for delta in deltas:
        best = max(best, int(np.count_nonzero(burst_weights((offsets - delta) % q, b) <= t)))
    return best + 1


def reconstruction_degree_bound(n: int, q: int, b: int, t: int, s: int) -> Fraction:
    """(t+1)^2 f_2 n^s with f_2 = t^(t-s) 2^(t-s+1) b^(2(t-s)) q^(bt) / s!."""
    if not 0 <= s <= t - 1:
        raise ParameterError(f"need 0 <= s <= t-1, got s={s}, t={t}")
    f2 = Fraction(t ** (t - s) * 2 ** (t - s + 1) * b ** (2 * (t - s)) * q ** (b * t), math.factorial(s))
    return (t + 1) ** 2 * f2 * n**s


# --- diameter and shifting ---------------------------------------------------


def diameter(words, b: int) -> int:
    words = list(words)
    if len(words) < 2:
        raise ParameterError("diameter needs at least two words")
    M = words_matrix(words)
    q = words[0].q
    best = 0
    for i in range(len(M) - 1):
        best = max(best, int(burst_weights((M[i + 1 :] - M[i]) % q, b).max()))
    return best


def shift(A: WordSet, i: int, a: int) -> WordSet:
    """Apply the compression S_{i,a} to every word of A (i is 1-based)."""
    if a % A.q == 0:
        raise ParameterError("shift symbol must be nonzero")
    if not 1 <= i <= A.n:
        raise ParameterError(f"index {i} outside [1, {A.n}]")
    j = i - 1
    out = set()
    for x in A.words:
        if x.symbols[j] == a:
            zeroed = Word(x.symbols[:j] + (0,) + x.symbols[j + 1 :], x.q)
            out.add(x if zeroed in A.words else zeroed)
        else:
            out.add(x)
    return WordSet(A.n, A.q, frozenset(out))


def is_fixed_point(A: WordSet) -> bool:
    return all(shift(A, i, a) == A for i in range(1, A.n + 1) for a in range(1, A.q))


def shift_to_fixed_point(A: WordSet) -> WordSet:
    """Sweep S_{i,a} (i ascending, then a ascending) until nothing moves."""
    current = A
    changed = True
    while changed:
        changed = False
        for i in range(1, A.n + 1):
            for a in range(1, A.q):
                nxt = shift(current, i, a)
                if nxt != current:
                    current = nxt
                    changed = True
    return current


@dataclass
class DiametricReport:
    n: int
    q: int
    b: int
    d: int
    ball_size: int
    max_found: int
    method: str
    exceeds: bool
    witness: list


def diametric_bound_check(
    n: int,
    q: int,
    b: int,
    d: int,
    *,
    trials: int = 200,
    seed: int = 0,
    exact_limit: int = 64,
) -> DiametricReport:
    """Search for large sets of b-diameter <= 2d and compare with |Ball_{d,b}(0)|.

    Translation lets us assume 0 is in the set, so every member lies in
    Ball_{2d,b}(0). With few enough candidates the maximum is found exactly
    as a maximum clique of the "within 2d" graph; otherwise a randomized
    greedy search seeded with the ball itself is used. Exceeding the ball
    size is reported, not raised: the extremal statement only holds for
    large n.
    """
    ball = count_ball(d, b, n, q)
    if d == 0:
        return DiametricReport(n, q, b, d, ball, 1, "trivial", False, [Word.zeros(n, q)])
    cand = ball_offsets(n, q, 2 * d, b) if n >= 4 * d * b else _all_within(n, q, 2 * d, b)
    K = len(cand)
    adj = np.zeros((K, K), dtype=bool)
    for i in range(K):
        adj[i] = burst_weights((cand - cand[i]) % q, b) <= 2 * d
    if K <= exact_limit:
        import networkx as nx

        G = nx.Graph()
        G.add_nodes_from(range(K))
        G.add_edges_from(zip(*np.nonzero(np.triu(adj, 1))))
        clique, size = nx.max_weight_clique(G, weight=None)
        method = "exact-clique"
        best = sorted(clique)
    else:
        method = "local-search"
        rng = np.random.default_rng(seed)
        in_ball = burst_weights(cand, b) <= d
        best = list(np.flatnonzero(in_ball))
        best = _greedy_extend(adj, best, rng.permutation(K))
        zero = int(np.flatnonzero(burst_weights(cand, b) == 0)[0])
        for _ in range(trials):
            order = rng.permutation(K)
            found = _greedy_extend(adj, [zero], order)
            if len(found) > len(best):
                best = found
    witness = [Word(tuple(int(v) for v in cand[i]), q) for i in best]
    return DiametricReport(n, q, b, d, ball, len(best), method, len(best) > ball, witness)


def _all_within(n: int, q: int, radius: int, b: int) -> np.ndarray:
    allw = np.array(list(itertools.product(range(q), repeat=n)), dtype=np.int16)
    return allw[burst_weights(allw, b) <= radius]


def _greedy_extend(adj: np.ndarray, start: list, order) -> list:
    members = list(start)
    ok = adj[members].all(axis=0) if members else np.ones(len(adj), dtype=bool)
    for v in order:
        v = int(v)
        if ok[v] and v not in members:
            members.append(v)
            ok &= adj[v]
    return members
