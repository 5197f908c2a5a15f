"""Brute-force ground truth on small symmetric groups.

Everything here works on explicit permutations of {0, ..., n-1} with exact
integer or rational arithmetic, and deliberately ignores the representation
theory used elsewhere in the package.

Permutations are tuples in one-line notation; ``compose(p, q)`` applies q
first, so ``compose(p, q)[i] == p[q[i]]``.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import factorial

from .config import caps
from .exceptions import DomainError, SizeError

Perm = tuple[int, ...]


def _check(n: int, limit: int | None = None) -> None:
    limit = caps().oracle_max if limit is None else limit
    if n < 1 or n > limit:
        raise SizeError(f"oracle supports 1 <= n <= {limit}, got {n}")


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    return tuple(p[i] for i in q)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def transposition(i: int, j: int, n: int) -> Perm:
    """The transposition swapping i and j (0-based)."""
    p = list(range(n))
    p[i], p[j] = p[j], p[i]
    return tuple(p)


def cycle_type(p: Perm) -> tuple[int, ...]:
    seen = [False] * len(p)
    lengths = []
    for start in range(len(p)):
        if seen[start]:
            continue
        length, i = 0, start
        while not seen[i]:
            seen[i] = True
            i = p[i]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def cycle_count(p: Perm) -> int:
    return len(cycle_type(p))


def fixed_points(p: Perm) -> int:
    return sum(1 for i, v in enumerate(p) if i == v)


def all_permutations(n: int) -> list[Perm]:
    """All n! permutations, in lexicographic order (which is rank order)."""
    _check(n)
    return list(permutations(range(n)))


def rank(p: Perm) -> int:
    """Lexicographic rank through the Lehmer code."""
    n = len(p)
    r = 0
    for i in range(n):
        smaller = sum(1 for j in range(i + 1, n) if p[j] < p[i])
        r += smaller * factorial(n - 1 - i)
    return r


def unrank(r: int, n: int) -> Perm:
    items = list(range(n))
    out = []
    for i in range(n - 1, -1, -1):
        q, r = divmod(r, factorial(i))
        out.append(items.pop(q))
    return tuple(out)


# ---------------------------------------------------------------------------
# group algebra


class AlgebraElement:
    """Finitely supported element of the group algebra Q[S_n]."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: dict[Perm, Fraction] | None = None):
        self.n = n
        self.coeffs = {p: Fraction(c) for p, c in (coeffs or {}).items() if c != 0}

    @classmethod
    def identity(cls, n: int) -> "AlgebraElement":
        return cls(n, {identity(n): Fraction(1)})

    @classmethod
    def of(cls, p: Perm) -> "AlgebraElement":
        return cls(len(p), {tuple(p): Fraction(1)})

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.coeffs)
        for p, c in other.coeffs.items():
            out[p] = out.get(p, 0) + c
        return AlgebraElement(self.n, out)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + other.scale(-1)

    def scale(self, c) -> "AlgebraElement":
        return AlgebraElement(self.n, {p: c * v for p, v in self.coeffs.items()})

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        out: dict[Perm, Fraction] = {}
        for p, a in self.coeffs.items():
            for q, b in other.coeffs.items():
                r = compose(p, q)
                out[r] = out.get(r, 0) + a * b
        return AlgebraElement(self.n, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgebraElement) and self.n == other.n and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"AlgebraElement(n={self.n}, terms={len(self.coeffs)})"


def yjm(i: int, n: int) -> AlgebraElement:
    """Jucys-Murphy element R_i = (1,i) + ... + (i-1,i), with 1-based ``i`` in 2..n."""
    if not 2 <= i <= n:
        raise DomainError(f"R_i needs 2 <= i <= n, got i={i}, n={n}")
    out = AlgebraElement(n)
    for j in range(1, i):
        out = out + AlgebraElement.of(transposition(j - 1, i - 1, n))
    return out


def elementary_symmetric_yjm(k: int, n: int) -> AlgebraElement:
    """e_k(R_2, ..., R_n) expanded in the group algebra."""
    if not 0 <= k <= n - 1:
        raise DomainError(f"need 0 <= k <= n - 1, got k={k}")
    # e[j] after processing R_2..R_m; R_m multiplied on the right keeps indices increasing
    e = [AlgebraElement.identity(n)] + [AlgebraElement(n) for _ in range(k)]
    for m in range(2, n + 1):
        r = yjm(m, n)
        for j in range(k, 0, -1):
            e[j] = e[j] + e[j - 1] * r
    return e[k]


def elementary_symmetric_yjm_naive(k: int, n: int) -> AlgebraElement:
    """Same as ``elementary_symmetric_yjm`` by summing every product over index subsets."""
    out = AlgebraElement(n)
    for idx in combinations(range(2, n + 1), k):
        term = AlgebraElement.identity(n)
        for i in idx:
            term = term * yjm(i, n)
        out = out + term
    return out


def class_sum_by_cycles(n: int, cycles: int) -> AlgebraElement:
    return AlgebraElement(n, {p: Fraction(1) for p in all_permutations(n) if cycle_count(p) == cycles})


def verify_diaconis_green(n: int) -> dict[str, bool]:
    """e_k(R_2..R_n) equals the sum of permutations with n - k cycles, for each k."""
    _check(n, min(6, caps().oracle_max))
    return {f"k={k}": elementary_symmetric_yjm(k, n) == class_sum_by_cycles(n, n - k) for k in range(n)}


# ---------------------------------------------------------------------------
# walk distributions


@lru_cache(maxsize=4)
def _quotient_table(n: int) -> tuple[tuple[int, ...], ...]:
    # table[g][h] = rank(g h^-1)
    perms = all_permutations(n)
    index = {p: i for i, p in enumerate(perms)}
    invs = [inverse(p) for p in perms]
    return tuple(tuple(index[compose(g, hinv)] for hinv in invs) for g in perms)


def _step_weights(n: int, theta: Fraction) -> tuple[list[int], int]:
    # P(sigma) = theta^cycles / theta^(n) = p^c q^(n-c) / prod (p + q i) for theta = p/q
    p, q = theta.numerator, theta.denominator
    denom = 1
    for i in range(n):
        denom *= p + q * i
    weights = [p ** cycle_count(s) * q ** (n - cycle_count(s)) for s in all_permutations(n)]
    return weights, denom


def ewens_distribution(n: int, theta) -> list[Fraction]:
    """One step of the walk: Ewens probabilities in rank order."""
    _check(n)
    weights, denom = _step_weights(n, Fraction(theta))
    return [Fraction(w, denom) for w in weights]


def brute_force_walk_distribution(n: int, theta, t: int, *, budget: int = 6) -> list[Fraction]:
    """Exact t-fold convolution of the Ewens step law started at the identity, in rank order.

    ``budget`` caps n (raise it to 7 for the slow tier).
    """
    _check(n, min(budget, caps().oracle_max))
    if t < 0 or t > 10:
        raise SizeError("brute-force walk supports 0 <= t <= 10")
    theta = Fraction(theta)
    weights, denom = _step_weights(n, theta)
    size = factorial(n)
    table = _quotient_table(n)
    current = [0] * size
    current[0] = 1  # rank 0 is the identity
    scale = 1
    for _ in range(t):
        nxt = [0] * size
        for h, ch in enumerate(current):
            if ch == 0:
                continue
            for g in range(size):
                # mu * nu (g) = sum_h mu(g h^-1) nu(h)
                nxt[g] += weights[table[g][h]] * ch
        current = nxt
        scale *= denom
    return [Fraction(c, scale) for c in current]


def brute_force_tv(n: int, theta, t: int, *, budget: int = 6) -> Fraction:
    dist = brute_force_walk_distribution(n, theta, t, budget=budget)
    uniform = Fraction(1, factorial(n))
    return sum((abs(p - uniform) for p in dist), Fraction(0)) / 2


def brute_force_class_distribution(n: int, theta, t: int) -> dict[tuple[int, ...], Fraction]:
    """Per-element probability by cycle type; raises if the law is not a class function."""
    dist = brute_force_walk_distribution(n, theta, t)
    out: dict[tuple[int, ...], Fraction] = {}
    for p, prob in zip(all_permutations(n), dist):
        mu = cycle_type(p)
        if out.setdefault(mu, prob) != prob:
            raise AssertionError(f"law is not constant on class {mu}")
    return out


def brute_force_fixed_point_moments(n: int, theta, t: int) -> tuple[Fraction, Fraction]:
    dist = brute_force_walk_distribution(n, theta, t)
    perms = all_permutations(n)
    mean = sum((pr * fixed_points(p) for p, pr in zip(perms, dist)), Fraction(0))
    second = sum((pr * fixed_points(p) ** 2 for p, pr in zip(perms, dist)), Fraction(0))
    return mean, second - mean * mean


def return_probability(n: int, theta, t: int) -> Fraction:
    return brute_force_walk_distribution(n, theta, t)[0]


def fixed_point_tail(n: int, k: int) -> Fraction:
    """Pr(fix >= k) under the uniform law by counting."""
    _check(n)
    hits = sum(1 for p in all_permutations(n) if fixed_points(p) >= k)
    return Fraction(hits, factorial(n))


def verify_matching(n: int) -> dict[str, bool]:
    from .mixing import matching_tail

    _check(n)
    counts = Counter(fixed_points(p) for p in all_permutations(n))
    out = {}
    for k in range(0, n + 1):
        brute = Fraction(sum(c for f, c in counts.items() if f >= k), factorial(n))
        out[f"k={k}"] = brute == matching_tail(n, k)
    return out


def count_by_cycles(n: int) -> Counter:
    """Number of permutations with each cycle count."""
    _check(n)
    return Counter(cycle_count(p) for p in all_permutations(n))


def count_by_type(n: int) -> Counter:
    _check(n)
    return Counter(cycle_type(p) for p in all_permutations(n))


def verify_convolution(n: int, theta, t: int) -> dict[str, bool]:
    """Compare the character-inversion law and TV against brute-force convolution, exactly."""
    from .mixing import total_variation_exact, walk_class_distribution

    brute = brute_force_class_distribution(n, theta, t)
    dist = walk_class_distribution(n, theta, t, exact=True)
    return {
        "class_function": True,
        "distribution": all(dist.probability(mu) == p for mu, p in brute.items()),
        "total_variation": total_variation_exact(n, theta, t, exact=True) == brute_force_tv(n, theta, t),
    }
