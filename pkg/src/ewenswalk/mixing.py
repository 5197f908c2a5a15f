"""Exact t-step laws, total variation distance, and the upper/lower bounds around it.

The t-step law of the walk is a class function. Fourier inversion over the
character table gives, per element of class mu,

    P^t(mu) = (1/n!) sum_lam d_lam beta_lam^t chi^lam(mu).

With theta = p/q every eigenvalue is C_lam / D for integers
C_lam = prod (p + q c(i)) and D = prod (p + q (i - 1)), so the rational mode
works entirely in integers: n! D^t P^t(mu) = sum_lam d_lam C_lam^t chi^lam(mu).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, log, log2

import numpy as np

from .characters import character_table, fixed_point_character
from .config import caps
from .exceptions import DomainError, InvariantError
from .partitions import (
    Partition,
    class_size,
    contents_book_order,
    dimension,
    iter_partitions,
)
from .spectrum import (
    ThetaLike,
    ThetaValue,
    eigenvalue,
    is_integer_theta,
    log_eigenvalue,
    region_classify,
    resolve_theta,
    rising_factorial,
)

NEGATIVE_TOLERANCE = 1e-12
MASS_TOLERANCE = 1e-10


def ewens_class_probability(mu: Partition, theta: ThetaLike) -> Fraction:
    """Ewens probability of one permutation of cycle type ``mu``: theta^l(mu) / theta^(n)."""
    n = sum(mu)
    th = resolve_theta(theta, n)
    return th ** len(mu) / rising_factorial(th, n)


def ewens_class_mass(mu: Partition, theta: ThetaLike) -> Fraction:
    return class_size(mu) * ewens_class_probability(mu, theta)


def _use_rational(n: int, exact: bool | None) -> bool:
    return n <= caps().rational_tv_max if exact is None else exact


@lru_cache(maxsize=32)
def _integer_spectrum(n: int, theta: Fraction) -> tuple[tuple[int, ...], tuple[int, ...], int]:
    # (d_lam, C_lam) in table order, and D
    p, q = theta.numerator, theta.denominator
    labels = character_table(n).rows
    dims = tuple(dimension(lam) for lam in labels)
    cs = tuple(math.prod(p + q * c for c in contents_book_order(lam)) for lam in labels)
    return dims, cs, math.prod(p + q * i for i in range(n))


@lru_cache(maxsize=32)
def _float_spectrum(n: int, theta: Fraction) -> tuple[np.ndarray, np.ndarray]:
    labels = character_table(n).rows
    dims = np.array([float(dimension(lam)) for lam in labels])
    betas = []
    for lam in labels:
        sign, log_abs = log_eigenvalue(lam, theta)
        betas.append(0.0 if sign == 0 else sign * math.exp(log_abs))
    return dims, np.array(betas)


@lru_cache(maxsize=8)
def _table_float(n: int) -> np.ndarray:
    return character_table(n).as_array(float)


def _rational_numerators(n: int, theta: Fraction, t: int) -> tuple[list[int], int]:
    """Integers S(mu) and the common denominator n! D^t of the t-step class law."""
    table = character_table(n)
    dims, cs, denom = _integer_spectrum(n, theta)
    weights = [d * c**t for d, c in zip(dims, cs)]
    sums = [0] * len(table.cols)
    for w, row in zip(weights, table.values):
        if w == 0:
            continue
        for j, chi in enumerate(row):
            if chi:
                sums[j] += w * chi
    return sums, factorial(n) * denom**t


def _float_deviations(n: int, theta: Fraction, t: int) -> np.ndarray:
    """P^t(mu) - 1/n! per element; positive and negative terms summed separately."""
    dims, betas = _float_spectrum(n, theta)
    x = _table_float(n)
    weights = dims[1:] * betas[1:] ** t
    terms = weights[:, None] * x[1:, :]
    pos = np.where(terms > 0, terms, 0.0).sum(axis=0)
    neg = np.where(terms < 0, -terms, 0.0).sum(axis=0)
    return (pos - neg) / float(factorial(n))


@dataclass(frozen=True)
class ClassDistribution:
    """Per-element probability of each conjugacy class after t steps."""

    n: int
    theta: Fraction
    t: int
    classes: tuple[Partition, ...]
    probabilities: tuple  # Fraction in rational mode, float otherwise
    exact: bool
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {mu: i for i, mu in enumerate(self.classes)})

    def probability(self, mu: Partition) -> Fraction | float:
        return self.probabilities[self._index[tuple(mu)]]

    def class_mass(self, mu: Partition) -> Fraction | float:
        return class_size(mu) * self.probability(mu)

    def total_mass(self) -> Fraction | float:
        if self.exact:
            return sum((class_size(mu) * p for mu, p in zip(self.classes, self.probabilities)), Fraction(0))
        return math.fsum(class_size(mu) * p for mu, p in zip(self.classes, self.probabilities))

    def as_dict(self) -> dict[Partition, Fraction | float]:
        return dict(zip(self.classes, self.probabilities))


def _clamp(values: np.ndarray) -> np.ndarray:
    low = values.min()
    if low < -NEGATIVE_TOLERANCE:
        raise InvariantError(f"negative probability {low:.3e} beyond tolerance")
    if low < 0:
        warnings.warn(f"clamping negative probability {low:.3e} to zero", RuntimeWarning, stacklevel=3)
        values = np.where(values < 0, 0.0, values)
    return values


def walk_class_distribution(n: int, theta: ThetaLike, t: int, exact: bool | None = None) -> ClassDistribution:
    """Law of the walk after ``t`` steps from the identity, as a class function.

    Args:
        n: size of the symmetric group, within the character-table cap.
        theta: Ewens parameter (a ``ThetaValue``, a number, or ``"n"``).
        t: number of steps, t >= 0.
        exact: rational arithmetic when true; defaults to rational for small n.
    """
    if t < 0:
        raise DomainError("t must be non-negative")
    th = resolve_theta(theta, n)
    table = character_table(n)
    rational = _use_rational(n, exact)
    if rational:
        sums, denom = _rational_numerators(n, th, t)
        probs = tuple(Fraction(s, denom) for s in sums)
        if min(probs) < 0:
            raise InvariantError("negative probability in rational mode")
    else:
        dev = _float_deviations(n, th, t)
        probs = tuple(float(v) for v in _clamp(1.0 / factorial(n) + dev))
    dist = ClassDistribution(n, th, t, table.cols, probs, rational)
    total = dist.total_mass()
    if rational and total != 1:
        raise InvariantError(f"class masses sum to {total}")
    if not rational and abs(total - 1.0) > MASS_TOLERANCE:
        raise InvariantError(f"class masses sum to {total!r}")
    return dist


def total_variation_exact(n: int, theta: ThetaLike, t: int, exact: bool | None = None) -> Fraction | float:
    """(1/2) sum over classes of |class| * |P^t(mu) - 1/n!|.

    Returns a ``Fraction`` in rational mode and a float otherwise.
    """
    if t < 0:
        raise DomainError("t must be non-negative")
    th = resolve_theta(theta, n)
    table = character_table(n)
    sizes = [class_size(mu) for mu in table.cols]
    if _use_rational(n, exact):
        sums, denom = _rational_numerators(n, th, t)
        uniform = denom // factorial(n)
        total = sum(sz * abs(s - uniform) for sz, s in zip(sizes, sums))
        return Fraction(total, 2 * denom)
    dev = _float_deviations(n, th, t)
    return 0.5 * math.fsum(sz * abs(float(v)) for sz, v in zip(sizes, dev))


def tv_profile(n: int, theta: ThetaLike, t_values, exact: bool | None = None) -> list:
    return [total_variation_exact(n, theta, t, exact) for t in t_values]


# ---------------------------------------------------------------------------
# upper bound


def _contributing(n: int, theta: Fraction):
    # at integer theta = k < n every partition with more than k parts has eigenvalue 0
    if is_integer_theta(theta) and theta.numerator < n:
        return iter_partitions(n, max_parts=theta.numerator)
    return iter_partitions(n)


@lru_cache(maxsize=16)
def _log_terms(n: int, theta: Fraction) -> tuple[tuple[Partition, ...], np.ndarray, np.ndarray]:
    """Nontrivial partitions with nonzero eigenvalue, 2 log d and log |beta|."""
    labels, log_d2, log_beta = [], [], []
    for lam in _contributing(n, theta):
        if len(lam) == 1:
            continue
        sign, log_abs = log_eigenvalue(lam, theta)
        if sign == 0:
            continue
        labels.append(lam)
        log_d2.append(2.0 * math.log(dimension(lam)))
        log_beta.append(log_abs)
    return tuple(labels), np.array(log_d2), np.array(log_beta)


def _logsumexp(values: np.ndarray) -> float:
    if values.size == 0:
        return -math.inf
    top = float(values.max())
    return top + math.log(math.fsum(np.exp(values - top)))


def ds_sum(n: int, theta: ThetaLike, t: int, exact: bool | None = None) -> Fraction | float:
    """(1/4) sum over lam != (n) of d_lam^2 beta_lam^(2t).

    Its square root bounds the total variation distance (see ``ds_upper_bound``).
    """
    if t < 0:
        raise DomainError("t must be non-negative")
    th = resolve_theta(theta, n)
    rational = n <= caps().exact_mode_max if exact is None else exact
    if rational:
        total = Fraction(0)
        for lam in _contributing(n, th):
            if len(lam) > 1:
                total += dimension(lam) ** 2 * eigenvalue(lam, th) ** (2 * t)
        return total / 4
    _, log_d2, log_beta = _log_terms(n, th)
    return math.exp(_logsumexp(log_d2 + 2 * t * log_beta)) / 4


def log_ds_sum(n: int, theta: ThetaLike, t: int) -> float:
    th = resolve_theta(theta, n)
    _, log_d2, log_beta = _log_terms(n, th)
    return _logsumexp(log_d2 + 2 * t * log_beta) - math.log(4)


def ds_upper_bound(n: int, theta: ThetaLike, t: int) -> float:
    """Upper bound on the total variation distance after t steps: sqrt(ds_sum)."""
    th = resolve_theta(theta, n)
    return math.exp(0.5 * log_ds_sum(n, th, t))


def ds_sum_by_region(n: int, theta: ThetaLike, t: int) -> dict[str, float]:
    """Share of ``ds_sum`` from each region R1..R4 of the partition plane."""
    th = resolve_theta(theta, n)
    labels, log_d2, log_beta = _log_terms(n, th)
    logs = log_d2 + 2 * t * log_beta
    out = {}
    regions = np.array([region_classify(lam) for lam in labels]) if labels else np.array([])
    for name in ("R1", "R2", "R3", "R4"):
        mask = regions == name
        out[name] = math.exp(_logsumexp(logs[mask])) / 4 if mask.any() else 0.0
    return out


# ---------------------------------------------------------------------------
# fixed points and lower bounds


def fixed_point_moments(n: int, theta: ThetaLike, t: int) -> tuple[Fraction, Fraction]:
    """Mean and variance of the number of fixed points after t steps.

    The defining representation is trivial + (n-1, 1), and its tensor square is
    2 trivial + 3 (n-1, 1) + (n-2, 2) + (n-2, 1, 1); each summand lam contributes
    d_lam beta_lam^t. Below n = 4 the moments come from brute force.
    """
    th = resolve_theta(theta, n)
    if n < 4:
        from .oracle import brute_force_fixed_point_moments

        return brute_force_fixed_point_moments(n, th, t)

    def trace(lam):
        return dimension(lam) * eigenvalue(lam, th) ** t

    std = trace((n - 1, 1))
    mean = 1 + std
    second = 2 + 3 * std + trace((n - 2, 2)) + trace((n - 2, 1, 1))
    return mean, second - mean * mean


def matching_tail(n: int, k: int) -> Fraction:
    """Probability that a uniform permutation of n has at least k fixed points."""
    if k <= 0:
        return Fraction(1)
    if k > n:
        return Fraction(0)
    s = sum(Fraction((-1) ** (l - k), l * factorial(l - k)) for l in range(k, n + 1))
    return s / factorial(k - 1)


def uniform_fixed_points_at_most(n: int, s: int) -> Fraction:
    return 1 - matching_tail(n, s + 1)


def _cantelli(mean: Fraction, var: Fraction, s: int) -> Fraction:
    # Pr(X <= s) <= Var / (Var + (E - s)^2) for s < E
    gap = mean - s
    if gap <= 0:
        return Fraction(1)
    return var / (var + gap * gap)


def chebyshev_lower_bound(n: int, theta: ThetaLike, t: int, threshold: int) -> float:
    """pi(fix <= s) minus the one-sided Chebyshev bound on P^t(fix <= s), floored at 0."""
    mean, var = fixed_point_moments(n, theta, t)
    value = uniform_fixed_points_at_most(n, threshold) - _cantelli(mean, var, threshold)
    return max(0.0, float(value))


def best_chebyshev_lower_bound(n: int, theta: ThetaLike, t: int) -> tuple[float, int]:
    """Largest ``chebyshev_lower_bound`` over thresholds 0..ceil(mean)+3, with its threshold."""
    mean, var = fixed_point_moments(n, theta, t)
    best, arg = 0.0, 0
    for s in range(0, math.ceil(mean) + 4):
        value = float(uniform_fixed_points_at_most(n, s) - _cantelli(mean, var, s))
        if value > best:
            best, arg = value, s
    return best, arg


def cutoff_lower_bound(n: int, gamma: float) -> tuple[float, int]:
    """1 - 2^-gamma, paired with the step count round(log2 n - gamma)."""
    if gamma <= 0:
        raise DomainError("gamma must be positive")
    return 1.0 - 2.0 ** (-gamma), round(log2(n) - gamma)


def cutoff_bound_at(n: int, t: int) -> float:
    """1 - 2^-(log2 n - t) when t < log2 n, else 0."""
    gamma = log2(n) - t
    return 1.0 - 2.0 ** (-gamma) if gamma > 0 else 0.0


# ---------------------------------------------------------------------------
# profile


@dataclass(frozen=True)
class BoundsRecord:
    t: int
    exact_tv: float | None
    upper_bound: float
    lower_bound: float
    ds_sum: float
    threshold: int
    cutoff_bound: float


@dataclass
class BoundsReport:
    n: int
    theta: str
    records: list[BoundsRecord]
    regime: str

    def check(self, tol: float = 1e-12) -> None:
        """Raise ``InvariantError`` unless lower <= exact <= upper and exact is non-increasing."""
        prev = None
        for rec in self.records:
            if rec.exact_tv is None:
                continue
            if not rec.lower_bound - tol <= rec.exact_tv <= rec.upper_bound + tol:
                raise InvariantError(f"sandwich fails at t={rec.t}: {rec}")
            if prev is not None and rec.exact_tv > prev + tol:
                raise InvariantError(f"total variation increases at t={rec.t}")
            prev = rec.exact_tv

    def summary(self) -> dict:
        half = None
        for rec in self.records:
            value = rec.exact_tv if rec.exact_tv is not None else rec.upper_bound
            if value <= 0.5:
                half = rec.t
                break
        return {
            "n": self.n,
            "theta": self.theta,
            "cutoff_estimate_steps": log2(self.n),
            "t_at_tv_half": half,
        }


def cutoff_profile(
    n: int,
    theta: ThetaLike = "n",
    t_max: int | None = None,
    *,
    t_min: int = 1,
    exact: bool | None = None,
    exact_limit: int | None = None,
) -> BoundsReport:
    """Bounds (and exact TV when the character table fits) for t = t_min..t_max."""
    if t_max is None:
        t_max = math.ceil(log2(n)) + 6
    if t_max < 1 or t_min < 0 or t_min > t_max:
        raise DomainError("need 0 <= t_min <= t_max and t_max >= 1")
    th = resolve_theta(theta, n)
    label = str(theta) if isinstance(theta, ThetaValue) else ("n" if theta == "n" else str(th))
    exact_limit = caps().character_table_max if exact_limit is None else exact_limit
    records = []
    for t in range(t_min, t_max + 1):
        tv = float(total_variation_exact(n, th, t, exact)) if n <= exact_limit else None
        lower, thr = best_chebyshev_lower_bound(n, th, t)
        records.append(
            BoundsRecord(
                t=t,
                exact_tv=tv,
                upper_bound=ds_upper_bound(n, th, t) if t > 0 else 1.0,
                lower_bound=lower,
                ds_sum=float(ds_sum(n, th, t, exact=False)),
                threshold=thr,
                cutoff_bound=cutoff_bound_at(n, t),
            )
        )
    regime = "theta=n" if th == n else ("integer-theta" if is_integer_theta(th) else "rational-theta")
    report = BoundsReport(n=n, theta=label, records=records, regime=regime)
    report.check()
    return report


def expected_fixed_points(dist: ClassDistribution):
    """Mean number of fixed points under a class distribution (cross-check of the moments)."""
    return sum(dist.class_mass(mu) * fixed_point_character(mu) for mu in dist.classes)


def log2_steps(n: int) -> float:
    return log(n) / log(2)
