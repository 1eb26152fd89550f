"""Seeded simulator of the t-burst channel ch(t, b).

The channel in the analysis is adversarial: any word of Ball_{t,b}(x) may come
out. For Monte Carlo work we sample as follows (not uniform over the ball):
draw k uniformly from 0..t, draw k pairwise-disjoint intervals with lengths
uniform in 1..b by rejection, fill each with values whose two ends are
nonzero. Reads are drawn without replacement by rejection, with an
enumerate-and-choose fallback when the ball is small or nearly exhausted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .balls import ball_intersection, ball_offsets, count_ball
from .core import (
    BurstError,
    CyclicInterval,
    ErrorPattern,
    ParameterError,
    Word,
    interval_gap,
)

RNG_ALGORITHM = "numpy.random.PCG64"
MAX_INTERVAL_TRIES = 1000
ENUMERATE_LIMIT = 200_000


class ChannelError(RuntimeError):
    pass


def make_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def spawn_seeds(seed: int, count: int) -> list[np.random.SeedSequence]:
    """Independent child seeds for parallel tasks."""
    return np.random.SeedSequence(seed).spawn(count)


@dataclass(frozen=True)
class ChannelSpec:
    n: int
    q: int
    t: int
    b: int
    seed: int = 0

    def __post_init__(self):
        if self.q < 2 or self.b < 1 or self.t < 0 or self.n < 1:
            raise ParameterError(f"bad channel parameters {self}")
        if self.n < 2 * self.t * self.b:
            raise ParameterError(f"channel needs n >= 2tb, got n={self.n} t={self.t} b={self.b}")

    def rng(self) -> np.random.Generator:
        return make_rng(self.seed)


@dataclass(frozen=True)
class ReadSet:
    reads: tuple[Word, ...]
    source: Word | None = None
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not isinstance(self.reads, tuple):
            object.__setattr__(self, "reads", tuple(self.reads))
        if len(set(self.reads)) != len(self.reads):
            raise ParameterError("reads must be pairwise distinct")

    def __len__(self):
        return len(self.reads)

    def __iter__(self):
        return iter(self.reads)


def _random_values(length: int, q: int, rng: np.random.Generator) -> tuple[int, ...]:
    vals = rng.integers(0, q, size=length)
    vals[0] = rng.integers(1, q)
    if length > 1:
        vals[-1] = rng.integers(1, q)
    return tuple(int(v) for v in vals)


def sample_error(spec: ChannelSpec, rng: np.random.Generator) -> ErrorPattern:
    """Draw an error pattern of at most t disjoint bursts (see module docstring)."""
    k = int(rng.integers(0, spec.t + 1))
    if k == 0:
        return ErrorPattern(())
    n = spec.n
    for _ in range(MAX_INTERVAL_TRIES):
        starts = rng.integers(1, n + 1, size=k)
        lengths = rng.integers(1, spec.b + 1, size=k)
        ivs = [CyclicInterval(int(s), int(ln), n) for s, ln in zip(starts, lengths)]
        if all(interval_gap(ivs[i], ivs[j]) >= 0 for i in range(k) for j in range(i + 1, k)):
            break
    else:
        raise ChannelError(
            f"no {k} disjoint intervals found in {MAX_INTERVAL_TRIES} tries (n={n}, b={spec.b})"
        )
    ivs.sort(key=lambda iv: iv.start)
    return ErrorPattern(tuple(BurstError(iv, _random_values(iv.length, spec.q, rng)) for iv in ivs))


def transmit(x: Word, spec: ChannelSpec, rng: np.random.Generator) -> Word:
    return x + sample_error(spec, rng).to_word(spec.n, spec.q)


def generate_reads(
    x: Word,
    spec: ChannelSpec,
    N: int,
    rng: np.random.Generator | None = None,
    *,
    adversary: Word | None = None,
) -> ReadSet:
    """N distinct reads from Ball_{t,b}(x).

    With ``adversary`` set, reads are first taken from the intersection of the
    balls around ``x`` and ``adversary`` (worst case for unique decoding),
    topped up from Ball_{t,b}(x) if the intersection is too small.
    """
    if len(x) != spec.n or x.q != spec.q:
        raise ParameterError("transmitted word does not match the channel")
    rng = spec.rng() if rng is None else rng
    size = count_ball(spec.t, spec.b, spec.n, spec.q)
    if N < 1 or N > size:
        raise ParameterError(f"cannot draw N={N} distinct reads from a ball of size {size}")
    meta = {"rng": RNG_ALGORITHM, "seed": spec.seed, "mode": "random"}
    reads: list[Word] = []
    if adversary is not None:
        meta["mode"] = "adversarial"
        common = list(ball_intersection(x, adversary, spec.t, spec.b))
        take = min(N, len(common))
        idx = rng.choice(len(common), size=take, replace=False) if take else []
        reads = [common[int(i)] for i in idx]
    seen = set(reads)
    need = N - len(reads)
    if need == 0:
        return ReadSet(tuple(reads), x, meta)
    if need > size // 2 and size <= ENUMERATE_LIMIT:
        return ReadSet(tuple(reads) + _choose_from_ball(x, spec, need, seen, rng), x, meta)
    tries = 0
    budget = 50 * need + 1000
    while len(reads) < N and tries < budget:
        tries += 1
        y = transmit(x, spec, rng)
        if y not in seen:
            seen.add(y)
            reads.append(y)
    if len(reads) < N:
        if size > ENUMERATE_LIMIT:
            raise ChannelError(f"rejection sampling stalled at {len(reads)}/{N} reads")
        reads.extend(_choose_from_ball(x, spec, N - len(reads), seen, rng))
    return ReadSet(tuple(reads), x, meta)


def _choose_from_ball(x, spec, need, seen, rng) -> tuple[Word, ...]:
    rows = (ball_offsets(spec.n, spec.q, spec.t, spec.b) + x.array()) % spec.q
    pool = [w for w in (Word(tuple(int(v) for v in r), spec.q) for r in rows) if w not in seen]
    idx = rng.choice(len(pool), size=need, replace=False)
    return tuple(pool[int(i)] for i in idx)


def b_order(samples, b: int, q: int, t: int | None = None, *, min_decay: float = 0.5) -> int | None:
    """Finite-sample b-order of a read-count function N(n).

    ``samples`` is a sequence of (n, N) pairs over at least two lengths.
    Returns -1 when N = 1 throughout; otherwise the largest s with
    |Ball_{s,b}(0)| < N(n) at every sampled n, provided the ratio
    N(n) / |Ball_{s+1,b}(0)| strictly decreases along increasing n and its
    log-log slope from the first to the last sample is at most -min_decay
    (our stand-in for N = o(|Ball_{s+1}|)). Returns None when no s
    qualifies. ``t`` optionally caps the search.
    """
    pts = sorted((int(n), int(N)) for n, N in samples)
    if not pts:
        raise ParameterError("need at least one (n, N) sample")
    if all(N == 1 for _, N in pts):
        return -1
    if any(N <= 1 for _, N in pts) or len({n for n, _ in pts}) < 2:
        return None
    s = 0
    limit = max(n for n, _ in pts) if t is None else t
    while s + 1 <= limit and all(count_ball(s + 1, b, n, q) < N for n, N in pts):
        s += 1
    ratios = [N / count_ball(s + 1, b, n, q) for n, N in pts]
    if not all(r2 < r1 for r1, r2 in zip(ratios, ratios[1:])):
        return None
    slope = math.log(ratios[-1] / ratios[0]) / math.log(pts[-1][0] / pts[0][0])
    return s if slope <= -min_decay else None
