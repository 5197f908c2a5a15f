"""Monte Carlo: Ewens permutations by the Chinese restaurant process, and walk simulation.

Permutations are numpy integer arrays in one-line notation on {0, ..., n-1};
batches are 2-D arrays with one permutation per row. Work is split into fixed
chunks, each drawn from its own stream ``SeedSequence(seed, spawn_key=(chunk,))``,
so results depend only on the seed and never on the thread count.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exceptions import DomainError
from .spectrum import ThetaLike, resolve_theta, stirling_first

CHUNK = 1 << 15
STATS = ("fixed-points", "cycle-count", "cycle-type")


@dataclass(frozen=True)
class SeedSpec:
    seed: int
    stream: int = 0

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(self.seed, spawn_key=(self.stream,))
        return np.random.Generator(np.random.PCG64(seq))


def sample_ewens(n: int, theta: float, rng: np.random.Generator, size: int | None = None) -> np.ndarray:
    """Ewens(theta) permutations by sequential insertion.

    Element i opens a new cycle with probability theta / (theta + i); otherwise it
    is inserted right after a uniformly chosen earlier element.
    """
    if theta <= 0:
        raise DomainError("theta must be positive")
    rows = 1 if size is None else size
    perm = np.empty((rows, n), dtype=np.int64)
    ar = np.arange(rows)
    for i in range(n):
        perm[:, i] = i
        if i == 0:
            continue
        joins = rng.random(rows) >= theta / (theta + i)
        after = rng.integers(0, i, size=rows)
        r, j = ar[joins], after[joins]
        perm[r, i] = perm[r, j]
        perm[r, j] = i
    return perm[0] if size is None else perm


def sample_cycle_type_feller(n: int, theta: float, rng: np.random.Generator, size: int) -> list[tuple[int, ...]]:
    """Cycle types from the Feller coupling: gaps between successes of independent
    Bernoulli(theta / (theta + i - 1)) trials, i = 1..n, read from the top down."""
    probs = theta / (theta + np.arange(n))
    hits = rng.random((size, n)) < probs
    out = []
    for row in hits:
        # trial i = n, n-1, ..., 1; a success at i closes a cycle
        lengths, run = [], 0
        for success in row[::-1]:
            run += 1
            if success:
                lengths.append(run)
                run = 0
        out.append(tuple(sorted(lengths, reverse=True)))
    return out


def compose(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Row-wise p after q: result[..., i] = p[..., q[..., i]]."""
    return np.take_along_axis(p, q, axis=-1)


def inverse(p: np.ndarray) -> np.ndarray:
    out = np.empty_like(p)
    np.put_along_axis(out, p, np.broadcast_to(np.arange(p.shape[-1]), p.shape), axis=-1)
    return out


def cycle_lengths(perms: np.ndarray) -> np.ndarray:
    """Length of the cycle through each element, row-wise."""
    perms = np.atleast_2d(perms)
    n = perms.shape[1]
    start = np.broadcast_to(np.arange(n), perms.shape)
    lengths = np.zeros_like(perms)
    cur = perms.copy()
    for k in range(1, n + 1):
        closed = (cur == start) & (lengths == 0)
        lengths[closed] = k
        cur = np.take_along_axis(perms, cur, axis=1)
    return lengths


def fixed_point_counts(perms: np.ndarray) -> np.ndarray:
    perms = np.atleast_2d(perms)
    return (perms == np.arange(perms.shape[1])).sum(axis=1)


def cycle_counts(perms: np.ndarray) -> np.ndarray:
    return _multiplicities(perms).sum(axis=1)


def _multiplicities(perms: np.ndarray) -> np.ndarray:
    lengths = cycle_lengths(perms)
    n = lengths.shape[1]
    # cycles of length L cover L elements each
    return np.stack([(lengths == L).sum(axis=1) // L for L in range(1, n + 1)], axis=1)


def _type_of(mult_row) -> tuple[int, ...]:
    n = len(mult_row)
    return tuple(L for L in range(n, 0, -1) for _ in range(int(mult_row[L - 1])))


def cycle_types(perms: np.ndarray) -> list[tuple[int, ...]]:
    return [_type_of(row) for row in _multiplicities(perms)]


def _walk_batch(n: int, theta: float, t: int, rng: np.random.Generator, rows: int) -> np.ndarray:
    state = np.broadcast_to(np.arange(n), (rows, n)).copy()
    for _ in range(t):
        step = sample_ewens(n, theta, rng, size=rows)
        state = compose(step, state)  # new step on the left
    return state


def simulate_walk(n: int, theta: ThetaLike, t: int, seed: SeedSpec, samples: int | None = None) -> np.ndarray:
    """State after ``t`` steps, sigma_t = tau_t ... tau_1 with i.i.d. Ewens steps."""
    if t < 0:
        raise DomainError("t must be non-negative")
    th = float(resolve_theta(theta, n))
    rows = 1 if samples is None else samples
    state = _walk_batch(n, th, t, seed.generator(), rows)
    return state[0] if samples is None else state


def _histogram(perms: np.ndarray, stat: str) -> Counter:
    if stat == "fixed-points":
        values = fixed_point_counts(perms)
    elif stat == "cycle-count":
        values = cycle_counts(perms)
    elif stat == "cycle-type":
        rows, counts = np.unique(_multiplicities(perms), axis=0, return_counts=True)
        return Counter({_type_of(r): int(c) for r, c in zip(rows, counts)})
    else:
        raise DomainError(f"unknown statistic {stat!r}; choose from {STATS}")
    keys, counts = np.unique(values, return_counts=True)
    return Counter({int(k): int(c) for k, c in zip(keys, counts)})


def empirical_statistic(
    n: int,
    theta: ThetaLike,
    t: int,
    samples: int,
    stat: str = "fixed-points",
    seed: int = 0,
    threads: int = 1,
) -> Counter:
    """Histogram of ``stat`` over ``samples`` independent walks of ``t`` steps."""
    if samples < 1:
        raise DomainError("need at least one sample")
    if stat not in STATS:
        raise DomainError(f"unknown statistic {stat!r}; choose from {STATS}")
    th = float(resolve_theta(theta, n))
    chunks = [(i, min(CHUNK, samples - i * CHUNK)) for i in range(math.ceil(samples / CHUNK))]

    def run(chunk):
        index, rows = chunk
        rng = SeedSpec(seed, index).generator()
        return _histogram(_walk_batch(n, th, t, rng, rows), stat)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, chunks))
    else:
        parts = [run(c) for c in chunks]
    total = Counter()
    for part in parts:
        total.update(part)
    return total


def uniform_cdf(n: int, stat: str) -> dict[int, Fraction]:
    """Exact Pr(stat <= s) under the uniform law, for s = 0..n."""
    from .mixing import uniform_fixed_points_at_most

    if stat == "fixed-points":
        return {s: uniform_fixed_points_at_most(n, s) for s in range(n + 1)}
    if stat == "cycle-count":
        nf = math.factorial(n)
        acc, out = 0, {}
        for s in range(n + 1):
            acc += stirling_first(n, s)
            out[s] = Fraction(acc, nf)
        return out
    raise DomainError(f"no scalar uniform law for statistic {stat!r}")


def dkw_epsilon(samples: int, confidence: float = 0.99) -> float:
    """Dvoretzky-Kiefer-Wolfowitz half-width for the whole empirical CDF."""
    return math.sqrt(math.log(2.0 / (1.0 - confidence)) / (2.0 * samples))


def empirical_tv_lower(
    n: int,
    theta: ThetaLike,
    t: int,
    samples: int,
    stat: str = "fixed-points",
    seed: int = 0,
    threads: int = 1,
) -> float:
    """Conservative Monte Carlo lower bound on the total variation distance.

    Uses the events {stat <= s}: max_s |F_emp(s) - F_uniform(s)| minus the 99%
    DKW half-width, floored at zero. Only scalar statistics are supported.
    """
    if samples < 1000:
        raise DomainError("empirical_tv_lower needs at least 1000 samples")
    cdf = uniform_cdf(n, stat)
    hist = empirical_statistic(n, theta, t, samples, stat, seed, threads)
    acc, gap = 0, 0.0
    for s in range(n + 1):
        acc += hist.get(s, 0)
        gap = max(gap, abs(acc / samples - float(cdf[s])))
    return max(0.0, gap - dkw_epsilon(samples))
