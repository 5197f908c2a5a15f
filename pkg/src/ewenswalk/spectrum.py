"""Eigenvalues of the Ewens walk and the inequalities built on them.

The eigenvalue attached to a partition lam of n is the content polynomial over
the rising factorial, prod_i (theta + c(i)) / (theta + i - 1), with multiplicity
d_lam^2. Every eigenvalue in this package is computed from that product; the
other functions here are bounds checked against it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import comb, factorial, floor, log
from typing import Iterable, NamedTuple, Union

from .config import caps
from .exceptions import DomainError
from .partitions import (
    Partition,
    as_partition,
    contents_book_order,
    dimension,
    dominates,
    enumerate_partitions,
    hook_lengths,
    iter_partitions,
)

# ---------------------------------------------------------------------------
# theta


@dataclass(frozen=True)
class ThetaValue:
    """Either a fixed rational theta or the rule theta = n."""

    kind: str  # "fixed" or "linked"
    value: Fraction | None = None

    def __post_init__(self):
        if self.kind not in ("fixed", "linked"):
            raise ValueError(f"unknown theta kind {self.kind!r}")
        if self.kind == "fixed" and (self.value is None or self.value <= 0):
            raise ValueError("a fixed theta must be a positive rational")

    @classmethod
    def fixed(cls, value) -> "ThetaValue":
        return cls("fixed", to_fraction(value))

    @classmethod
    def linked(cls) -> "ThetaValue":
        return cls("linked")

    @classmethod
    def parse(cls, text: str) -> "ThetaValue":
        """Parse ``"n"``, ``"p/q"`` or a decimal string (converted exactly, ``"1.2"`` -> 6/5)."""
        text = text.strip()
        if text == "n":
            return cls.linked()
        try:
            value = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed theta {text!r}") from exc
        if value <= 0:
            raise ValueError(f"theta must be positive, got {text!r}")
        return cls("fixed", value)

    def resolve(self, n: int) -> Fraction:
        return Fraction(n) if self.kind == "linked" else self.value

    def __str__(self) -> str:
        return "n" if self.kind == "linked" else str(self.value)


ThetaLike = Union[ThetaValue, Fraction, int, float, str]


def to_fraction(x) -> Fraction:
    # floats go through their shortest repr so 1.2 means 6/5, not the binary double
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def resolve_theta(theta: ThetaLike, n: int) -> Fraction:
    if isinstance(theta, ThetaValue):
        value = theta.resolve(n)
    elif isinstance(theta, str):
        value = ThetaValue.parse(theta).resolve(n)
    else:
        value = to_fraction(theta)
    if value <= 0:
        raise DomainError(f"theta must be positive, got {value}")
    return value


def is_integer_theta(theta: Fraction) -> bool:
    return theta.denominator == 1


# ---------------------------------------------------------------------------
# rising factorial, Stirling numbers, content polynomial


def rising_factorial(theta, n: int) -> Fraction:
    """theta (theta + 1) ... (theta + n - 1)."""
    theta = to_fraction(theta)
    out = Fraction(1)
    for i in range(n):
        out *= theta + i
    return out


@cache
def _stirling_row(n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _stirling_row(n - 1)
    row = [0] * (n + 1)
    for i in range(1, n + 1):
        row[i] = (prev[i - 1] if i - 1 < len(prev) else 0) + (n - 1) * (prev[i] if i < len(prev) else 0)
    return tuple(row)


def stirling_first(n: int, i: int) -> int:
    """Unsigned Stirling number of the first kind: permutations of n with i cycles."""
    if not 0 <= i <= n:
        raise DomainError(f"stirling_first needs 0 <= i <= n, got n={n}, i={i}")
    return _stirling_row(n)[i]


def rising_factorial_stirling(theta, n: int) -> Fraction:
    theta = to_fraction(theta)
    return sum((stirling_first(n, i) * theta**i for i in range(n + 1)), Fraction(0))


def content_polynomial(lam: Partition, theta) -> Fraction:
    theta = to_fraction(theta)
    out = Fraction(1)
    for c in contents_book_order(lam):
        out *= theta + c
    return out


# ---------------------------------------------------------------------------
# eigenvalues


def eigenvalue(lam: Partition, theta: ThetaLike) -> Fraction:
    """Exact eigenvalue prod_i (theta + c(i)) / (theta + i - 1)."""
    n = sum(lam)
    th = resolve_theta(theta, n)
    return content_polynomial(lam, th) / rising_factorial(th, n)


def log_eigenvalue(lam: Partition, theta: ThetaLike) -> tuple[int, float]:
    """Eigenvalue as (sign, natural log of |value|); zero is (0, -inf)."""
    n = sum(lam)
    th = resolve_theta(theta, n)
    contents = contents_book_order(lam)
    if is_integer_theta(th) and -th.numerator in contents:
        return 0, -math.inf
    tf = float(th)
    negatives = sum(1 for c in contents if th + c < 0)
    logs = [log(abs(tf + c)) for c in contents] + [-log(tf + i) for i in range(n)]
    return (-1 if negatives % 2 else 1), math.fsum(logs)


@dataclass(frozen=True)
class SpectrumEntry:
    partition: Partition
    dimension: int
    eigenvalue_exact: Fraction | None
    sign: int
    log_abs: float

    @property
    def value(self) -> float:
        if self.eigenvalue_exact is not None:
            return float(self.eigenvalue_exact)
        return 0.0 if self.sign == 0 else self.sign * math.exp(self.log_abs)

    @property
    def log10_abs(self) -> float:
        return self.log_abs / math.log(10)


def spectrum_entry(lam: Partition, theta: ThetaLike, exact: bool | None = None) -> SpectrumEntry:
    n = sum(lam)
    if exact is None:
        exact = n <= caps().exact_mode_max
    sign, log_abs = log_eigenvalue(lam, theta)
    value = eigenvalue(lam, theta) if exact else None
    return SpectrumEntry(lam, dimension(lam), value, sign, log_abs)


def spectrum(n: int, theta: ThetaLike, exact: bool | None = None) -> list[SpectrumEntry]:
    """Spectrum entries for every partition of n, in enumeration order."""
    return [spectrum_entry(lam, theta, exact) for lam in enumerate_partitions(n)]


def second_eigenvalue(n: int, theta: ThetaLike) -> Fraction:
    """Eigenvalue of (n-1, 1): (theta - 1) / (theta + n - 1)."""
    if n < 2:
        raise DomainError("second eigenvalue needs n >= 2")
    th = resolve_theta(theta, n)
    return (th - 1) / (th + n - 1)


def second_eigenvalue_is_maximal(n: int, theta: ThetaLike) -> bool:
    """Exhaustive check that |beta_lam| <= beta_(n-1,1) for every lam other than (n)."""
    th = resolve_theta(theta, n)
    star = second_eigenvalue(n, th)
    return all(abs(eigenvalue(lam, th)) <= star for lam in enumerate_partitions(n)[1:])


# ---------------------------------------------------------------------------
# inequalities on eigenvalues


class BoundCheck(NamedTuple):
    exact: object
    bound: object
    holds: bool


def hook_shape_bound(m: int, k: int, n: int) -> Fraction:
    """((k - 1) / (k + n - 1))^(m - 1), a bound on the eigenvalue of (n - m + 1, 1^(m - 1)) at theta = k."""
    if not 1 <= m <= n or k < 1:
        raise DomainError(f"hook_shape_bound needs 1 <= m <= n and k >= 1, got m={m}, k={k}, n={n}")
    return Fraction(k - 1, k + n - 1) ** (m - 1)


def hook_shape(m: int, n: int) -> Partition:
    return (n - m + 1,) + (1,) * (m - 1)


def check_hook_shape_bound(m: int, k: int, n: int) -> BoundCheck:
    exact = eigenvalue(hook_shape(m, n), k)
    bound = hook_shape_bound(m, k, n)
    return BoundCheck(exact, bound, exact <= bound)


def schur_principal(lam: Partition, k: int) -> int:
    """s_lam(1^k) = prod (k + c) / h over the boxes; zero unless lam has at most k parts."""
    if k < 1:
        raise DomainError("schur_principal needs k >= 1")
    value = Fraction(1)
    for c, h in zip(contents_book_order(lam), hook_lengths(lam)):
        value *= Fraction(k + c, h)
    assert value.denominator == 1
    return value.numerator


def sum_schur_squares(n: int, k: int) -> int:
    # partitions with more than k parts contribute zero
    return sum(schur_principal(lam, k) ** 2 for lam in iter_partitions(n, max_parts=k))


def cauchy_identity_holds(n: int, k: int) -> bool:
    return sum_schur_squares(n, k) == comb(n + k * k - 1, n)


def dimension_sum_bound_check(n: int, first_part: int) -> BoundCheck:
    """Exact sum of d^2 over partitions with first part ``first_part`` vs C(n, l1)^2 (n - l1)!."""
    if not 1 <= first_part <= n:
        raise DomainError(f"need 1 <= first part <= n, got {first_part} for n={n}")
    exact = sum(dimension(lam) ** 2 for lam in _with_first_part(n, first_part))
    bound = comb(n, first_part) ** 2 * factorial(n - first_part)
    return BoundCheck(exact, bound, exact <= bound)


def _with_first_part(n: int, first: int) -> Iterable[Partition]:
    rest = n - first
    if rest == 0:
        yield (first,)
        return
    for tail in iter_partitions(rest, limit=max(rest, caps().partition_max)):
        if tail[0] <= first:
            yield (first,) + tail


def _power_leq(lhs: int, base_int: int, power_base: int, exponent: Fraction) -> bool:
    """Exact test of lhs <= base_int * power_base**exponent for rational exponent."""
    p, q = exponent.numerator, exponent.denominator
    if p >= 0:
        return lhs**q <= base_int**q * power_base**p
    return lhs**q * power_base ** (-p) <= base_int**q


def tail_dimension_sums(n: int, alpha, mode: str = "first-row") -> BoundCheck:
    """Sums of d^2 over partitions with a long first row, against explicit finite-n bounds.

    ``first-row``: lam_1 >= alpha n, bound n 4^n n^((1 - alpha) n).
    ``two-rows``: additionally lam_1 / 2 <= lam_2, bound n^2 4^(2n) n^((1 - 3 alpha / 2) n).
    The bound is reported as a float; ``holds`` is decided in exact integer arithmetic.
    """
    alpha = to_fraction(alpha)
    if not 0 < alpha <= 1:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    if mode == "first-row":
        keep = lambda lam: lam[0] >= alpha * n  # noqa: E731
        base, exponent = n * 4**n, (1 - alpha) * n
    elif mode == "two-rows":
        keep = lambda lam: lam[0] >= alpha * n and 2 * (lam[1] if len(lam) > 1 else 0) >= lam[0]  # noqa: E731
        base, exponent = n * n * 4 ** (2 * n), (1 - Fraction(3, 2) * alpha) * n
    else:
        raise DomainError(f"unknown mode {mode!r}")
    exact = sum(dimension(lam) ** 2 for lam in iter_partitions(n) if keep(lam))
    bound = float(base) * float(n) ** float(exponent)
    return BoundCheck(exact, bound, _power_leq(exact, base, n, exponent))


def two_row_dimension_bound_check(n: int, l1: int, l2: int) -> BoundCheck:
    """Sum of d^2 over lam = (l1, l2, ...) vs C(n, l1)^2 C(n - l1, l2)^2 (n - l1 - l2)!."""
    rest = n - l1 - l2
    if l2 > l1 or rest < 0:
        raise DomainError("need l2 <= l1 and l1 + l2 <= n")
    if rest == 0:
        family = [(l1, l2) if l2 else (l1,)]
    elif l2 == 0:
        family = []
    else:
        family = [(l1, l2) + tail for tail in iter_partitions(rest, limit=max(rest, 1)) if tail[0] <= l2]
    exact = sum(dimension(lam) ** 2 for lam in family)
    bound = comb(n, l1) ** 2 * comb(n - l1, l2) ** 2 * factorial(rest)
    return BoundCheck(exact, bound, exact <= bound)


def monotonicity_check(n: int, theta: ThetaLike) -> dict:
    """Scan all dominating pairs lam >= mu.

    Returns a report with the list of violations of ``beta_lam >= beta_mu >= 0``
    (signed, exact) and of ``|beta_lam| >= |beta_mu|``.
    """
    th = resolve_theta(theta, n)
    parts = enumerate_partitions(n)
    betas = {lam: eigenvalue(lam, th) for lam in parts}
    signed, absolute = [], []
    pairs = 0
    for lam in parts:
        for mu in parts:
            if lam == mu or not dominates(lam, mu):
                continue
            pairs += 1
            bl, bm = betas[lam], betas[mu]
            if not (bl >= bm >= 0):
                signed.append((lam, mu))
            if abs(bl) < abs(bm):
                absolute.append((lam, mu, abs(bl / bm) if bm else None))
    return {
        "n": n,
        "theta": th,
        "pairs": pairs,
        "violations": signed,
        "absolute_violations": absolute,
    }


def monotonicity_failure_ratio(theta) -> Fraction:
    """|beta_(2,2,1) / beta_(2,1,1,1)| on S_5; equals theta / (3 - theta) for theta in (1, 3/2)."""
    th = to_fraction(theta)
    return abs(eigenvalue((2, 2, 1), th) / eigenvalue((2, 1, 1, 1), th))


# ---------------------------------------------------------------------------
# region apparatus for theta = n


def _nearest(x: Fraction) -> int:
    return floor(x + Fraction(1, 2))


def _fill(n: int, head: list[int], size: int) -> Partition:
    """Append parts of ``size`` after ``head`` until n is reached; the last part absorbs the rest."""
    parts = list(head)
    remaining = n - sum(parts)
    while remaining > size:
        parts.append(size)
        remaining -= size
    while remaining < 0:
        # rounding overshoot: trim from the back
        cut = min(-remaining, parts[-1])
        parts[-1] -= cut
        remaining += cut
        if parts[-1] == 0:
            parts.pop()
    if remaining > 0:
        parts.append(remaining)
    return as_partition(sorted(parts, reverse=True))


def _region_q_r(alpha: Fraction) -> tuple[int, Fraction]:
    q = floor(1 / alpha)
    return q, 1 - q * alpha


def region_partition_1(alpha, n: int) -> Partition:
    """(alpha n, ..., alpha n, r n) with q copies of alpha n and alpha q + r = 1."""
    alpha = to_fraction(alpha)
    if not 0 < alpha < 1:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    size = _nearest(alpha * n)
    if size < 1:
        raise DomainError(f"n={n} too small for alpha={alpha}")
    q, _ = _region_q_r(alpha)
    return _fill(n, [size] * min(q, n // size), size)


def region_partition_2(alpha, n: int) -> Partition:
    """(alpha n, alpha n / 2, ..., alpha n / 2, r n) for alpha <= 1/2, else (alpha n, (1-alpha) n / 2, (1-alpha) n / 2)."""
    alpha = to_fraction(alpha)
    if not 0 < alpha < 1:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    first = _nearest(alpha * n)
    side = _nearest(alpha * n / 2) if alpha <= Fraction(1, 2) else _nearest((1 - alpha) * n / 2)
    if first < 1 or side < 1:
        raise DomainError(f"n={n} too small for alpha={alpha}")
    return _fill(n, [first], side)


def region_classify(lam: Partition) -> str:
    """Region R1..R4 of a partition from its two largest parts (theta = n analysis)."""
    n = sum(lam)
    l1 = lam[0]
    l2 = lam[1] if len(lam) > 1 else 0
    if 13 * l1 <= n:
        return "R1"
    if 3 * l1 > n:
        return "R4"
    if 2 * l2 >= min(l1, n - l1):
        return "R2"
    return "R3"


def _row_profile(alpha: Fraction, which: int) -> list[Fraction]:
    if which == 1:
        q, r = _region_q_r(alpha)
        return [alpha] * q + ([r] if r else [])
    if alpha > Fraction(1, 2):
        side = (1 - alpha) / 2
        return [alpha, side, side]
    half = alpha / 2
    m = floor((1 - alpha) / half)
    rest = 1 - alpha - m * half
    return [alpha] + [half] * m + ([rest] if rest else [])


def profile_log_limit(rows: Iterable) -> float:
    """lim (1/n) log beta for a shape whose rows have lengths a_r n (sum a_r = 1), theta = n."""
    rows = [float(a) for a in rows]
    return math.fsum((1 + a) * log(1 + a) for a in rows) - 2 * log(2)


def region_log_asymptote(alpha, which: int = 1) -> float:
    """Limit of (1/n) log beta along ``region_partition_{which}(alpha, n)`` at theta = n.

    For the first family this is q (1+alpha) log(1+alpha) + (1+r) log(1+r) - 2 log 2.
    """
    alpha = to_fraction(alpha)
    if which not in (1, 2):
        raise DomainError("which must be 1 or 2")
    return profile_log_limit(_row_profile(alpha, which))


def region2_closed_form_exponent(alpha) -> float:
    """(alpha/2) log(1 + alpha/2) plus the first-family limit at alpha/2.

    An upper bound for the second-family limit, not the limit itself.
    """
    alpha = to_fraction(alpha)
    return float(alpha / 2) * log(1 + float(alpha / 2)) + region_log_asymptote(alpha / 2, 1)


def region_log_eigenvalue(alpha, n: int, which: int = 1) -> float:
    """(1/n) log beta of the region partition at theta = n, from the content product."""
    lam = region_partition_1(alpha, n) if which == 1 else region_partition_2(alpha, n)
    sign, log_abs = log_eigenvalue(lam, n)
    return log_abs / n


def region1_finite_bound_check(alpha, n: int) -> BoundCheck:
    """log beta of the first-family partition vs (2/alpha) log 2 + n * limit."""
    alpha = to_fraction(alpha)
    _, log_abs = log_eigenvalue(region_partition_1(alpha, n), n)
    bound = float(2 / alpha) * log(2) + n * region_log_asymptote(alpha, 1)
    return BoundCheck(log_abs, bound, log_abs <= bound)


def two_row_eigenvalue_bound(n: int, m: int) -> Fraction:
    """((n + m) / (2n))^m, bounding the eigenvalue of (n - m, m) at theta = n."""
    if m < 0 or 2 * m > n:
        raise DomainError(f"need 0 <= m <= n/2, got m={m}, n={n}")
    return Fraction(n + m, 2 * n) ** m


def check_two_row_bound(n: int, m: int) -> BoundCheck:
    lam = (n - m, m) if m else (n,)
    exact = eigenvalue(lam, n)
    bound = two_row_eigenvalue_bound(n, m)
    return BoundCheck(exact, bound, exact <= bound)


def dominated_by_region_1(alpha, n: int) -> bool:
    """Check the region-1 partition dominates exactly the partitions with lam_1 <= alpha n."""
    top = region_partition_1(alpha, n)
    return all(dominates(top, lam) == (lam[0] <= top[0]) for lam in enumerate_partitions(n))


