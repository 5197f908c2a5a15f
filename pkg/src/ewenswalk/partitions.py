"""Integer partitions: enumeration, conjugation, dominance, hooks, contents, dimensions.

A partition is a plain tuple of positive, non-increasing integers, e.g. ``(3, 1)``.
The same tuple doubles as a cycle type labelling a conjugacy class of S_n.
"""

from __future__ import annotations

from collections import Counter
from functools import cache
from itertools import accumulate, zip_longest
from math import factorial, lgamma, log, prod
from typing import Iterator, Sequence

from .config import caps
from .exceptions import DomainError, SizeError

Partition = tuple[int, ...]


def is_partition(parts: Sequence[int]) -> bool:
    if len(parts) == 0:
        return False
    if any((not isinstance(p, int)) or p <= 0 for p in parts):
        return False
    return all(parts[i] >= parts[i + 1] for i in range(len(parts) - 1))


def as_partition(parts: Sequence[int]) -> Partition:
    """Validate ``parts`` and return it as a tuple.

    Raises:
        DomainError: if the parts are empty, non-positive or increasing somewhere.
    """
    lam = tuple(int(p) for p in parts)
    if not is_partition(lam):
        raise DomainError(f"not a partition: {parts!r}")
    return lam


def parse_partition(text: str) -> Partition:
    """Parse ``"3,1"`` or ``"[3, 1]"`` into ``(3, 1)``."""
    body = text.strip().strip("[]()")
    return as_partition([int(tok) for tok in body.split(",") if tok.strip()])


def format_partition(lam: Partition) -> str:
    return ",".join(str(p) for p in lam)


def _check_n(n: int, limit: int | None = None) -> None:
    limit = caps().partition_max if limit is None else limit
    if not isinstance(n, int) or n < 1:
        raise SizeError(f"n must be a positive integer, got {n!r}")
    if n > limit:
        raise SizeError(f"n={n} exceeds the enumeration cap {limit}")


def _zs1(n: int) -> Iterator[Partition]:
    # Zoghbi-Stojmenovic ZS1: reverse-lexicographic order, constant amortised time.
    x = [1] * (n + 1)
    x[1] = n
    m = h = 1
    yield (n,)
    while x[1] != 1:
        if x[h] == 2:
            m += 1
            x[h] = 1
            h -= 1
        else:
            r = x[h] - 1
            t = m - h + 1
            x[h] = r
            while t >= r:
                h += 1
                x[h] = r
                t -= r
            if t == 0:
                m = h
            else:
                m = h + 1
                if t > 1:
                    h += 1
                    x[h] = t
        yield tuple(x[1 : m + 1])


def _bounded(n: int, largest: int, parts_left: int) -> Iterator[Partition]:
    if n == 0:
        yield ()
        return
    if parts_left == 0:
        return
    # the remaining parts_left parts must be able to cover n
    for first in range(min(n, largest), 0, -1):
        if first * parts_left < n:
            break
        for rest in _bounded(n - first, first, parts_left - 1):
            yield (first,) + rest


def iter_partitions(n: int, max_parts: int | None = None, *, limit: int | None = None) -> Iterator[Partition]:
    """Yield the partitions of ``n`` in reverse-lexicographic order.

    With ``max_parts`` only partitions with at most that many parts are produced.
    Such restricted families grow polynomially in ``n``, so the enumeration cap
    does not apply to them.
    """
    if max_parts is not None and max_parts < n:
        _check_n(n, limit=max(n, 1))
        yield from _bounded(n, n, max_parts)
        return
    _check_n(n, limit)
    yield from _zs1(n)


def enumerate_partitions(n: int, max_parts: int | None = None, *, limit: int | None = None) -> list[Partition]:
    """All partitions of ``n`` exactly once, ``(n)`` first and ``(1^n)`` last."""
    return list(iter_partitions(n, max_parts, limit=limit))


def conjugate(lam: Partition) -> Partition:
    """Transpose of the Young diagram."""
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


def dominates(lam: Partition, mu: Partition) -> bool:
    """True iff every prefix sum of ``lam`` is at least the matching prefix sum of ``mu``."""
    if sum(lam) != sum(mu):
        raise DomainError(f"dominance needs equal sizes: |{lam}|={sum(lam)}, |{mu}|={sum(mu)}")
    pairs = zip_longest(accumulate(lam), accumulate(mu), fillvalue=sum(lam))
    return all(a >= b for a, b in pairs)


def hook_lengths(lam: Partition) -> list[int]:
    """Hook lengths in book order (row by row, left to right)."""
    lamc = conjugate(lam)
    return [lam[i] - j + lamc[j] - i - 1 for i in range(len(lam)) for j in range(lam[i])]


def contents_book_order(lam: Partition) -> list[int]:
    """Contents (column minus row) of the boxes, read row by row, left to right.

    >>> contents_book_order((2, 1))
    [0, 1, -1]
    """
    return [j - i for i, row in enumerate(lam) for j in range(row)]


@cache
def dimension(lam: Partition) -> int:
    """Dimension of the irreducible representation labelled by ``lam`` (hook-length formula)."""
    return factorial(sum(lam)) // prod(hook_lengths(lam))


def log_dimension(lam: Partition) -> float:
    """Natural log of :func:`dimension` through log-gamma; for large scans only."""
    return lgamma(sum(lam) + 1) - sum(log(h) for h in hook_lengths(lam))


def z_centralizer(mu: Partition) -> int:
    """Order of the centralizer of a permutation with cycle type ``mu``: prod_i i^m_i m_i!."""
    return prod(i**m * factorial(m) for i, m in Counter(mu).items())


def class_size(mu: Partition) -> int:
    """Number of permutations with cycle type ``mu``."""
    return factorial(sum(mu)) // z_centralizer(mu)


def sign_of_class(mu: Partition) -> int:
    return -1 if (sum(mu) - len(mu)) % 2 else 1


def first_row(lam: Partition) -> int:
    return lam[0]


def second_row(lam: Partition) -> int:
    return lam[1] if len(lam) > 1 else 0
