"""Words over Z_q, cyclic intervals, and the cyclic b-burst metric.

Indices are 1-based wherever they are shown to a user (``support``,
``CyclicInterval.start``, text output) and 0-based everywhere else.

Three independent routes to the burst distance live here:

* :func:`burst_distance` -- the linear-time left-anchored greedy: try every
  start inside the window of length ``b`` ending at the leftmost error, cover
  greedily, keep the best count.
* :func:`burst_distance_oracle` -- greedy cover from each of the ``n``
  rotations of the word (bitmask implementation), minimum over rotations.
* :func:`burst_weights` / :func:`burst_weights_oracle` -- numpy batch forms of
  the two above, used wherever many distances are needed at once.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

DIGITS = string.digits + string.ascii_lowercase


class ParameterError(ValueError):
    """Raised for parameter combinations outside an operation's domain."""


@dataclass(frozen=True)
class Params:
    n: int
    q: int
    b: int = 1
    t: int = 0
    s: int | None = None
    h: int | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError(f"n must be positive, got {self.n}")
        if self.q < 2:
            raise ParameterError(f"q must be at least 2, got {self.q}")
        if self.b < 1:
            raise ParameterError(f"b must be at least 1, got {self.b}")
        if self.t < 0:
            raise ParameterError(f"t must be non-negative, got {self.t}")
        if self.s is not None and not -1 <= self.s <= max(self.t - 1, -1):
            raise ParameterError(f"s must lie in [-1, t-1], got s={self.s}, t={self.t}")
        if self.h is not None:
            if self.s is None or not 0 <= self.h <= self.s:
                raise ParameterError(f"h must lie in [0, s], got h={self.h}, s={self.s}")

    @property
    def decomposition_regime(self) -> bool:
        """True when n >= 2tb, where disjoint-burst enumeration is exact."""
        return self.n >= 2 * self.t * self.b


@dataclass(frozen=True)
class Word:
    """A length-n vector over Z_q, stored 0-based."""

    symbols: tuple[int, ...]
    q: int

    def __post_init__(self):
        if self.q < 2:
            raise ParameterError(f"alphabet size must be at least 2, got {self.q}")
        if not isinstance(self.symbols, tuple):
            object.__setattr__(self, "symbols", tuple(int(v) for v in self.symbols))
        if self.symbols and (min(self.symbols) < 0 or max(self.symbols) >= self.q):
            bad = next(v for v in self.symbols if not 0 <= v < self.q)
            raise ParameterError(f"symbol {bad} outside [0, {self.q - 1}]")

    @classmethod
    def parse(cls, text: str, q: int) -> Word:
        text = text.strip()
        if q > len(DIGITS):
            raise ParameterError(f"text format supports q <= {len(DIGITS)}")
        try:
            symbols = tuple(int(ch, 36) for ch in text)
        except ValueError as exc:
            raise ParameterError(f"bad word text {text!r}") from exc
        return cls(symbols, q)

    @classmethod
    def zeros(cls, n: int, q: int) -> Word:
        return cls((0,) * n, q)

    @classmethod
    def from_array(cls, arr, q: int) -> Word:
        return cls(tuple(int(v) for v in arr), q)

    @property
    def n(self) -> int:
        return len(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]

    def __iter__(self):
        return iter(self.symbols)

    def __str__(self):
        return "".join(DIGITS[v] for v in self.symbols)

    def __lt__(self, other: Word):
        return (self.q, self.symbols) < (other.q, other.symbols)

    def _check(self, other: Word):
        if self.q != other.q:
            raise ParameterError(f"alphabet mismatch: q={self.q} vs q={other.q}")
        if len(self.symbols) != len(other.symbols):
            raise ParameterError(
                f"length mismatch: n={len(self.symbols)} vs n={len(other.symbols)}"
            )

    def __add__(self, other: Word) -> Word:
        self._check(other)
        q = self.q
        return Word(tuple((a + c) % q for a, c in zip(self.symbols, other.symbols)), q)

    def __sub__(self, other: Word) -> Word:
        self._check(other)
        q = self.q
        return Word(tuple((a - c) % q for a, c in zip(self.symbols, other.symbols)), q)

    def __neg__(self) -> Word:
        return Word(tuple((-a) % self.q for a in self.symbols), self.q)

    def array(self) -> np.ndarray:
        return np.array(self.symbols, dtype=np.int16)

    def hamming_weight(self) -> int:
        return sum(1 for v in self.symbols if v)


def support(w: Word) -> set[int]:
    """1-based indices of the nonzero symbols of ``w``."""
    return {i + 1 for i, v in enumerate(w.symbols) if v}


def hamming_distance(x: Word, y: Word) -> int:
    x._check(y)
    return sum(1 for a, c in zip(x.symbols, y.symbols) if a != c)


@dataclass(frozen=True)
class CyclicInterval:
    """The cyclic interval starting at 1-based ``start`` with ``length`` cells."""

    start: int
    length: int
    n: int

    def __post_init__(self):
        if not 1 <= self.start <= self.n:
            raise ParameterError(f"start {self.start} outside [1, {self.n}]")
        if not 1 <= self.length <= self.n:
            raise ParameterError(f"length {self.length} outside [1, {self.n}]")

    @classmethod
    def from_bounds(cls, i: int, j: int, n: int) -> CyclicInterval:
        """Build ``[i, j]_C`` from 1-based inclusive bounds."""
        length = j - i + 1 if i <= j else n + j - i + 1
        return cls(i, length, n)

    @property
    def end(self) -> int:
        """1-based last index."""
        return (self.start - 1 + self.length - 1) % self.n + 1

    def indices(self) -> list[int]:
        """0-based member indices in cyclic order from the start."""
        s = self.start - 1
        return [(s + k) % self.n for k in range(self.length)]

    def __contains__(self, i: int) -> bool:
        """Membership of a 1-based index."""
        return (i - self.start) % self.n < self.length

    def extension(self, k: int, b: int) -> CyclicInterval:
        """The (k, b)-extension ``[i - kb, j + kb]``, clipped to the full cycle."""
        length = min(self.length + 2 * k * b, self.n)
        start = (self.start - 1 - k * b) % self.n + 1
        return CyclicInterval(start, length, self.n)

    def __str__(self):
        return f"[{self.start},{self.end}]"


def interval_gap(a: CyclicInterval, c: CyclicInterval, n: int | None = None) -> int:
    """Number of cells strictly between two cyclic intervals, the shorter way round.

    Negative exactly when the intervals intersect; in that case the value is
    minus the size of the overlap.
    """
    n = a.n if n is None else n
    if a.n != n or c.n != n:
        raise ParameterError("intervals live on different cycles")
    overlap = len(set(a.indices()) & set(c.indices()))
    if overlap:
        return -overlap
    a_end = a.start - 1 + a.length - 1
    c_end = c.start - 1 + c.length - 1
    forward = (c.start - 1 - a_end - 1) % n
    backward = (a.start - 1 - c_end - 1) % n
    return min(forward, backward)


@dataclass(frozen=True)
class BurstError:
    """A single b<=-burst: nonzero-ended ``values`` laid on ``interval``."""

    interval: CyclicInterval
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.interval.length:
            raise ParameterError("burst values must match the interval length")
        if self.values[0] == 0 or self.values[-1] == 0:
            raise ParameterError("burst values must be nonzero at both ends")

    @property
    def length(self) -> int:
        return self.interval.length


@dataclass(frozen=True)
class ErrorPattern:
    bursts: tuple[BurstError, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not isinstance(self.bursts, tuple):
            object.__setattr__(self, "bursts", tuple(self.bursts))
        bs = self.bursts
        for i in range(len(bs)):
            for j in range(i + 1, len(bs)):
                if interval_gap(bs[i].interval, bs[j].interval) < 0:
                    raise ParameterError(
                        f"bursts {bs[i].interval} and {bs[j].interval} overlap"
                    )

    def __len__(self):
        return len(self.bursts)

    def to_word(self, n: int, q: int) -> Word:
        out = [0] * n
        for burst in self.bursts:
            if burst.interval.n != n:
                raise ParameterError("burst interval lives on a different cycle")
            for pos, v in zip(burst.interval.indices(), burst.values):
                out[pos] = v % q
        return Word(tuple(out), q)

    def max_length(self) -> int:
        return max((bst.length for bst in self.bursts), default=0)


# --- burst distance -------------------------------------------------------


def _support0(symbols: Sequence[int]) -> list[int]:
    return [i for i, v in enumerate(symbols) if v]


def _diff_support(x: Word, y: Word) -> list[int]:
    x._check(y)
    return [i for i, (a, c) in enumerate(zip(x.symbols, y.symbols)) if a != c]


def _window_starts(supp: list[int], n: int, b: int) -> list[int]:
    """Indices into ``supp`` of the support cells in ``[p1 - b + 1, p1]`` (cyclic)."""
    p1 = supp[0]
    starts = [0]
    # the window wraps below index 0 only when p1 < b - 1
    for k in range(len(supp) - 1, 0, -1):
        if (p1 - supp[k]) % n < b:
            starts.append(k)
        else:
            break
    return starts


def _greedy_count(supp: list[int], n: int, b: int, k0: int) -> int:
    """Greedy cover of ``supp`` starting with an interval at ``supp[k0]``."""
    m = len(supp)
    p = supp[k0]
    end = p + b - 1
    count = 1
    for step in range(1, m):
        x = supp[(k0 + step) % m]
        if x < p:
            x += n
        if x > end:
            count += 1
            end = x + b - 1
    return count


def burst_weight_from_support(supp: list[int], n: int, b: int) -> int:
    """Minimum number of cyclic length-<=b intervals covering sorted 0-based ``supp``."""
    if not supp:
        return 0
    if b >= n:
        return 1
    return min(_greedy_count(supp, n, b, k0) for k0 in _window_starts(supp, n, b))


def burst_distance(x: Word, y: Word, b: int) -> int:
    """Cyclic b<=-burst distance d_b(x, y), in O(b * n)."""
    if b < 1:
        raise ParameterError(f"b must be at least 1, got {b}")
    return burst_weight_from_support(_diff_support(x, y), len(x), b)


def burst_weight(w: Word, b: int) -> int:
    return burst_distance(w, Word.zeros(len(w), w.q), b)


def burst_distance_oracle(x: Word, y: Word, b: int) -> int:
    """d_b by brute force: greedy left-to-right cover from each of the n rotations."""
    if b < 1:
        raise ParameterError(f"b must be at least 1, got {b}")
    n = len(x)
    mask = 0
    for i in _diff_support(x, y):
        mask |= 1 << i
    if not mask:
        return 0
    full = (1 << n) - 1
    block = (1 << b) - 1
    best = n
    for s in range(n):
        m = ((mask >> s) | (mask << (n - s))) & full
        count = 0
        while m:
            low = (m & -m).bit_length() - 1
            m &= ~(block << low)
            count += 1
        best = min(best, count)
    return best


def _as_support_matrix(diffs: np.ndarray) -> np.ndarray:
    diffs = np.asarray(diffs)
    if diffs.ndim == 1:
        diffs = diffs[None, :]
    return diffs != 0


def _linear_greedy(rows: np.ndarray, b: int) -> np.ndarray:
    """Greedy left-to-right cover count for every row of a boolean matrix."""
    k, n = rows.shape
    end = np.full(k, -1, dtype=np.int64)
    count = np.zeros(k, dtype=np.int64)
    for j in range(n):
        hit = rows[:, j] & (j > end)
        count += hit
        end = np.where(hit, j + b - 1, end)
    return count


def burst_weights(diffs: np.ndarray, b: int) -> np.ndarray:
    """Batch form of :func:`burst_distance` applied to each row of ``diffs`` vs 0."""
    supp = _as_support_matrix(diffs)
    k, n = supp.shape
    out = np.zeros(k, dtype=np.int64)
    nonzero = supp.any(axis=1)
    if not nonzero.any():
        return out
    if b >= n:
        out[nonzero] = 1
        return out
    rows = np.flatnonzero(nonzero)
    s = supp[rows]
    p1 = s.argmax(axis=1)
    best = np.full(len(rows), n + 1, dtype=np.int64)
    cols = np.arange(n)
    for offset in range(b):
        start = (p1 - offset) % n
        valid = s[np.arange(len(rows)), start]
        if not valid.any():
            continue
        sel = np.flatnonzero(valid)
        idx = (start[sel, None] + cols[None, :]) % n
        rotated = np.take_along_axis(s[sel], idx, axis=1)
        best[sel] = np.minimum(best[sel], _linear_greedy(rotated, b))
    out[rows] = best
    return out


def burst_weights_oracle(diffs: np.ndarray, b: int) -> np.ndarray:
    """Batch form of :func:`burst_distance_oracle`: minimum over all n rotations."""
    supp = _as_support_matrix(diffs)
    k, n = supp.shape
    best = np.full(k, n + 1, dtype=np.int64)
    for s in range(n):
        best = np.minimum(best, _linear_greedy(np.roll(supp, -s, axis=1), b))
    best[~supp.any(axis=1)] = 0
    return best


def burst_distances_to(words: np.ndarray, y, q: int, b: int) -> np.ndarray:
    """d_b between every row of ``words`` and the single word ``y``."""
    y = np.asarray(y.symbols if isinstance(y, Word) else y, dtype=np.int16)
    return burst_weights((np.asarray(words, dtype=np.int16) - y) % q, b)


# --- disjoint decomposition ----------------------------------------------


def _greedy_cover(supp: list[int], n: int, b: int, k0: int) -> list[list[int]]:
    """Groups of support cells, one group per greedy interval."""
    m = len(supp)
    p = supp[k0]
    end = p + b - 1
    groups = [[supp[k0]]]
    for step in range(1, m):
        raw = supp[(k0 + step) % m]
        x = raw + n if raw < p else raw
        if x > end:
            groups.append([])
            end = x + b - 1
        groups[-1].append(raw)
    return groups


def decompose_disjoint(w: Word, b: int) -> ErrorPattern:
    """Write ``w`` as wt_b(w) pairwise-disjoint b<=-bursts with nonzero ends."""
    n = len(w)
    supp = _support0(w.symbols)
    if not supp:
        return ErrorPattern(())
    if b >= n:
        # one burst; pick the shortest arc that holds the whole support
        gaps = [((supp[(k + 1) % len(supp)] - supp[k]) % n or n, k) for k in range(len(supp))]
        _, k = max(gaps)
        groups = [[supp[(k + 1 + j) % len(supp)] for j in range(len(supp))]]
    else:
        starts = _window_starts(supp, n, b)
        k0 = min(starts, key=lambda k: _greedy_count(supp, n, b, k))
        groups = _greedy_cover(supp, n, b, k0)
    bursts = []
    for cells in groups:
        first, last = cells[0], cells[-1]
        length = (last - first) % n + 1
        interval = CyclicInterval(first + 1, length, n)
        values = tuple(w.symbols[i] for i in interval.indices())
        bursts.append(BurstError(interval, values))
    return ErrorPattern(tuple(bursts))


def words_matrix(words: Iterable[Word]) -> np.ndarray:
    rows = [w.symbols for w in words]
    if not rows:
        return np.zeros((0, 0), dtype=np.int16)
    return np.array(rows, dtype=np.int16)
