"""Burst-correcting codes: greedy GV and matching-based constant-weight constructions."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .balls import WordSet, ball_offsets, count_ball
from .core import ParameterError, Params, Word, burst_weights, words_matrix
from .channel import RNG_ALGORITHM, make_rng


@dataclass(frozen=True)
class Code:
    params: Params
    words: WordSet
    designed_t: int
    provenance: dict = field(default_factory=dict, compare=False)
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.words.n != self.params.n or self.words.q != self.params.q:
            raise ParameterError("code words do not match the code parameters")
        if self.designed_t < 0:
            raise ParameterError("designed_t must be non-negative")

    @classmethod
    def from_words(cls, words, n: int, q: int, b: int, designed_t: int = 0, **provenance) -> Code:
        return cls(Params(n=n, q=q, b=b), WordSet.of(words, n=n, q=q), designed_t, dict(provenance))

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __contains__(self, w):
        return w in self.words

    @property
    def n(self):
        return self.params.n

    @property
    def q(self):
        return self.params.q

    @property
    def b(self):
        return self.params.b

    def matrix(self) -> np.ndarray:
        """Codewords as an int16 matrix in sorted order (cached)."""
        if "matrix" not in self._cache:
            self._cache["matrix"] = self.words.matrix()
            self._cache["list"] = list(self.words)
        return self._cache["matrix"]

    def word_list(self) -> list[Word]:
        self.matrix()
        return self._cache["list"]

    def redundancy(self) -> float:
        return self.n - math.log(len(self), self.q)


def min_distance_witness(code: Code, radius: int, b: int | None = None):
    """First pair at burst distance < 2*radius + 1, or None."""
    b = code.b if b is None else b
    if radius == 0 or len(code) < 2:
        return None
    key = ("witness", radius, b)
    if key not in code._cache:
        M = code.matrix()
        words = code.word_list()
        found = None
        for i in range(len(M) - 1):
            d = burst_weights((M[i + 1 :] - M[i]) % code.q, b)
            bad = np.flatnonzero(d < 2 * radius + 1)
            if len(bad):
                found = (words[i], words[i + 1 + int(bad[0])])
                break
        code._cache[key] = found
    return code._cache[key]


def check_burst_code(code: Code, radius: int | None = None) -> tuple[bool, tuple | None]:
    """(ok, witness): ok iff every pair is at burst distance >= 2*radius + 1."""
    radius = code.designed_t if radius is None else radius
    witness = min_distance_witness(code, radius)
    return witness is None, witness


def min_distance(code: Code, b: int | None = None) -> int | None:
    b = code.b if b is None else b
    M = code.matrix()
    if len(M) < 2:
        return None
    return min(int(burst_weights((M[i + 1 :] - M[i]) % code.q, b).min()) for i in range(len(M) - 1))


def gv_floor(n: int, q: int, b: int, t: int) -> int:
    """ceil(q^n / |Ball_{2t,b}(0)|)."""
    return -(-(q**n) // count_ball(2 * t, b, n, q))


def construct_gv(
    params: Params,
    designed_t: int,
    ordering: str = "lexicographic",
    *,
    seed: int = 0,
    budget: int | None = None,
) -> Code:
    """Greedy sphere exclusion: keep a candidate iff it is >= 2t+1 from all kept words.

    ``lexicographic`` scans all of Z_q^n and so guarantees the GV floor.
    ``random`` streams uniformly random candidates until the GV floor is
    reached or ``budget`` candidates have been tried; provenance records
    whether the budget ran out first.
    """
    n, q, b = params.n, params.q, params.b
    t = designed_t
    prov = {"method": "gv", "ordering": ordering, "seed": seed}
    if ordering == "lexicographic":
        if n * math.log2(q) > 24:
            raise ParameterError(f"lexicographic GV limited to q^n <= 2^24, got n={n}, q={q}")
        words = _gv_lexicographic(n, q, b, t)
    elif ordering == "random":
        budget = 10_000 if budget is None else budget
        words, exhausted = _gv_random(n, q, b, t, budget, seed)
        prov.update(budget=budget, budget_exhausted=exhausted, rng=RNG_ALGORITHM)
    else:
        raise ParameterError(f"unknown ordering {ordering!r}")
    return Code(Params(n=n, q=q, b=b), WordSet(n, q, frozenset(words)), designed_t, prov)


def _gv_lexicographic(n: int, q: int, b: int, t: int) -> list[Word]:
    if t == 0:
        return [Word(s, q) for s in itertools.product(range(q), repeat=n)]
    # every word within 2t of a kept word is excluded; integer keys in lex order
    offsets = ball_offsets(n, q, 2 * t, b).astype(np.int64)
    powers = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    excluded = np.zeros(q**n, dtype=bool)
    kept = []
    for key in range(q**n):
        if excluded[key]:
            continue
        digits = np.array([(key // int(p)) % q for p in powers], dtype=np.int64)
        kept.append(Word(tuple(int(v) for v in digits), q))
        excluded[((offsets + digits) % q) @ powers] = True
    return kept


def _gv_random(n, q, b, t, budget, seed):
    rng = make_rng(seed)
    target = gv_floor(n, q, b, t)
    kept = np.zeros((0, n), dtype=np.int16)
    seen = set()
    for _ in range(budget):
        cand = rng.integers(0, q, size=n).astype(np.int16)
        key = cand.tobytes()
        if key in seen:
            continue
        seen.add(key)
        if len(kept) == 0 or burst_weights((kept - cand) % q, b).min() >= 2 * t + 1:
            kept = np.vstack([kept, cand])
            if len(kept) >= target:
                return [Word.from_array(r, q) for r in kept], False
    return [Word.from_array(r, q) for r in kept], True


# --- matching construction ---------------------------------------------------


@dataclass(frozen=True)
class EdgeSet:
    """w-subsets of [n] (1-based) with consecutive starts >= 3b apart cyclically."""

    n: int
    b: int
    w: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for e in self.edges:
            if not edge_ok(e, self.n, self.b):
                raise ParameterError(f"edge {e} violates the 3b spacing")

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)


def edge_ok(edge, n: int, b: int) -> bool:
    e = sorted(edge)
    if not e or e[0] < 1 or e[-1] > n:
        return False
    nxt = e[1:] + [e[0] + n]
    return all(a + 3 * b <= c for a, c in zip(e, nxt))


def matching_edges(n: int, b: int, w: int) -> EdgeSet:
    """All edges of the spacing hypergraph, in lexicographic order."""
    out = []

    def rec(prefix, lo):
        if len(prefix) == w:
            if prefix[-1] + 3 * b <= prefix[0] + n:
                out.append(tuple(prefix))
            return
        for i in range(lo, n + 1):
            if prefix and i + 3 * b * (w - len(prefix) - 1) > prefix[0] + n - 3 * b:
                break
            rec(prefix + [i], i + 3 * b)

    if w >= 1:
        rec([], 1)
    return EdgeSet(n, b, w, tuple(out))


def edge_word(edge, n: int, q: int, b: int) -> Word:
    """x_I: all-one runs of length b starting at every index of the edge."""
    sym = [0] * n
    for i in edge:
        for k in range(b):
            sym[(i - 1 + k) % n] = 1
    return Word(tuple(sym), q)


def greedy_matching(edges, t: int) -> list[tuple[int, ...]]:
    """Maximal set of edges no two of which share a t-subset (first fit)."""
    used: set = set()
    chosen = []
    for e in edges:
        subs = list(itertools.combinations(e, t))
        if any(s in used for s in subs):
            continue
        used.update(subs)
        chosen.append(e)
    return chosen


def construct_matching_code(n: int, q: int, b: int, w: int, r: int) -> Code:
    """Constant-weight (r, b)-burst-correcting code inside Ball_{w,b}(0).

    Codewords are x_I for the edges I of a greedy maximal matching of the
    auxiliary hypergraph whose vertices are (w - r)-subsets of [n]. Two
    matched edges share fewer than w - r indices, so their words are at
    burst distance >= 2r + 2.
    """
    if w < r or r < 0 or w < 1:
        raise ParameterError(f"need w >= r >= 0 and w >= 1, got w={w}, r={r}")
    if n < 3 * b * w:
        raise ParameterError(f"need n >= 3bw, got n={n}, b={b}, w={w}")
    es = matching_edges(n, b, w)
    chosen = greedy_matching(es, w - r)
    words = [edge_word(e, n, q, b) for e in chosen]
    prov = {"method": "matching", "w": w, "r": r, "edges": len(es), "matching": chosen}
    return Code(Params(n=n, q=q, b=b), WordSet(n, q, frozenset(words)), r, prov)


def johnson_upper_bound(n: int, q: int, b: int, w: int, r: int) -> int:
    """(w+1)(q^b - 1)^(w-r) n^(w-r)."""
    if w < r:
        raise ParameterError(f"need w >= r, got w={w}, r={r}")
    return (w + 1) * (q**b - 1) ** (w - r) * n ** (w - r)


@dataclass
class RedundancyReport:
    n: int
    size: int
    redundancy: float
    window_low: float
    window_high: float
    note: str = "window drops the O(1) terms; orientation only"


def redundancy_report(code: Code, t: int | None = None) -> RedundancyReport:
    if len(code) < 1:
        raise ParameterError("empty code")
    t = code.designed_t if t is None else t
    logn = math.log(code.n, code.q)
    return RedundancyReport(code.n, len(code), code.redundancy(), t * logn, 2 * t * logn)
