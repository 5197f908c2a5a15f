"""Irreducible characters of S_n by the Murnaghan-Nakayama rule.

Border strips are removed on the beta-set (first-column hook lengths) of the
shape: a strip of length r is a bead moved from position b to b - r, and its
height is the number of beads jumped over.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import cache, lru_cache
from math import factorial

import numpy as np

from .config import caps
from .exceptions import DomainError, InvariantError, SizeError
from .partitions import (
    Partition,
    class_size,
    dimension,
    enumerate_partitions,
    format_partition,
    z_centralizer,
)


def _shape_from_beta(beta: list[int]) -> Partition:
    beta = sorted(beta, reverse=True)
    length = len(beta)
    return tuple(p for p in (b - (length - 1 - i) for i, b in enumerate(beta)) if p > 0)


@cache
def _mn(shape: Partition, cycles: Partition) -> int:
    # cycles are consumed largest first; the value does not depend on the order
    if not cycles:
        return 1
    r, rest = cycles[0], cycles[1:]
    length = len(shape)
    beta = [p + length - 1 - i for i, p in enumerate(shape)]
    occupied = set(beta)
    total = 0
    for b in beta:
        target = b - r
        if target < 0 or target in occupied:
            continue
        height = sum(1 for c in beta if target < c < b)
        moved = [target if c == b else c for c in beta]
        value = _mn(_shape_from_beta(moved), rest)
        total += -value if height % 2 else value
    return total


def character(lam: Partition, mu: Partition) -> int:
    """Value of the irreducible character ``lam`` on the class of cycle type ``mu``."""
    if sum(lam) != sum(mu):
        raise DomainError(f"character needs |lam| == |mu|, got {sum(lam)} and {sum(mu)}")
    return _mn(tuple(lam), tuple(sorted(mu, reverse=True)))


def fixed_point_character(mu: Partition) -> int:
    """Character of the defining representation: the number of fixed points."""
    return sum(1 for p in mu if p == 1)


@dataclass(frozen=True)
class CharacterTable:
    n: int
    rows: tuple[Partition, ...]
    cols: tuple[Partition, ...]
    values: tuple[tuple[int, ...], ...]

    def __getitem__(self, key: tuple[Partition, Partition]) -> int:
        lam, mu = key
        return self.values[self.row_index[lam]][self.col_index[mu]]

    @property
    def row_index(self) -> dict[Partition, int]:
        return _index(self.rows)

    @property
    def col_index(self) -> dict[Partition, int]:
        return _index(self.cols)

    def row(self, lam: Partition) -> tuple[int, ...]:
        return self.values[self.row_index[lam]]

    def as_array(self, dtype=float) -> np.ndarray:
        return np.array(self.values, dtype=dtype)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["lambda", "mu", "value"])
        for lam, row in zip(self.rows, self.values):
            for mu, v in zip(self.cols, row):
                writer.writerow([format_partition(lam), format_partition(mu), v])
        return buf.getvalue()


_INDEX_CACHE: dict[tuple[Partition, ...], dict[Partition, int]] = {}


def _index(labels: tuple[Partition, ...]) -> dict[Partition, int]:
    idx = _INDEX_CACHE.get(labels)
    if idx is None:
        idx = {lab: i for i, lab in enumerate(labels)}
        _INDEX_CACHE[labels] = idx
    return idx


# primes below 2**20: residue products stay below 2**40 and row sums of up
# to 2**13 such products stay below 2**53, so float64 matmul is exact
_PRIMES = (1048573, 1048571, 1048559, 1048549, 1048517, 1048507, 1048447, 1048433,
           1048423, 1048391, 1048387, 1048367, 1048361, 1048357, 1048343, 1048309)


def _gram_matches(left: list[list[int]], right: list[list[int]], target: list[int], bound: int) -> bool:
    """Exact test that ``left @ right == diag(target)``, given |entries of both| <= bound.

    Residues modulo enough primes pin the integers down: two integers of size
    at most ``bound`` agreeing modulo a product of primes exceeding 2*bound are equal.
    """
    needed, modulus = [], 1
    for p in _PRIMES:
        needed.append(p)
        modulus *= p
        if modulus > 2 * bound:
            break
    else:
        raise SizeError("character table too large for the exact orthogonality check")
    size = len(target)
    for p in needed:
        a = np.array([[x % p for x in row] for row in left], dtype=np.float64)
        b = np.array([[x % p for x in row] for row in right], dtype=np.float64)
        prod_mod = np.mod(np.rint(a @ b).astype(np.int64), p)
        expected = np.zeros((size, size), dtype=np.int64)
        np.fill_diagonal(expected, [t % p for t in target])
        if not np.array_equal(prod_mod, expected):
            return False
    return True


def _verify_table(table: CharacterTable) -> None:
    n, rows, cols, values = table.n, table.rows, table.cols, table.values
    ident = cols.index((1,) * n)
    for lam, row in zip(rows, values):
        if row[ident] != dimension(lam):
            raise InvariantError(f"chi^{lam}(1) = {row[ident]} != d = {dimension(lam)}")
    sizes = [class_size(mu) for mu in cols]
    biggest = max(abs(v) for row in values for v in row)
    weighted_t = [[sizes[j] * values[i][j] for i in range(len(rows))] for j in range(len(cols))]
    bound = factorial(n) * biggest * biggest
    if not _gram_matches([list(r) for r in values], weighted_t, [factorial(n)] * len(rows), bound):
        raise InvariantError(f"row orthogonality fails for the S_{n} character table")


@lru_cache(maxsize=8)
def character_table(n: int, *, verify: bool = True) -> CharacterTable:
    """Full character table of S_n, rows and columns in enumeration order.

    The table is checked for ``chi(1) == d`` and row orthogonality before it is
    returned.

    Raises:
        SizeError: if ``n`` exceeds the configured table cap.
    """
    limit = caps().character_table_max
    if n < 1 or n > limit:
        raise SizeError(f"character table for n={n} outside 1..{limit}")
    labels = tuple(enumerate_partitions(n))
    values = tuple(tuple(_mn(lam, mu) for mu in labels) for lam in labels)
    table = CharacterTable(n=n, rows=labels, cols=labels, values=values)
    if verify:
        _verify_table(table)
    return table


def column_orthogonality_holds(table: CharacterTable) -> bool:
    """sum_lam chi(mu) chi(nu) == z_mu [mu == nu]."""
    cols_t = [list(col) for col in zip(*table.values)]
    biggest = max(abs(v) for row in table.values for v in row)
    bound = len(table.rows) * biggest * biggest
    target = [z_centralizer(mu) for mu in table.cols]
    return _gram_matches(cols_t, [list(r) for r in table.values], target, bound)


def row_orthogonality_holds(table: CharacterTable) -> bool:
    try:
        _verify_table(table)
    except InvariantError:
        return False
    return True


def elementary_symmetric(values: list[int], k: int) -> int:
    """e_k of a list of integers, exactly."""
    e = [1] + [0] * k
    for v in values:
        for j in range(k, 0, -1):
            e[j] += e[j - 1] * v
    return e[k]


def verify_character_table(n: int) -> dict[str, bool]:
    """Invariant checks on the S_n table, one boolean per named check."""
    from .partitions import conjugate, sign_of_class

    table = character_table(n, verify=False)
    results = {"row_orthogonality": row_orthogonality_holds(table)}
    results["identity_column"] = all(table[lam, (1,) * n] == dimension(lam) for lam in table.rows)
    results["column_orthogonality"] = column_orthogonality_holds(table)
    results["sign_twist"] = all(
        table[lam, mu] == sign_of_class(mu) * table[conjugate(lam), mu]
        for lam in table.rows
        for mu in table.cols
    )
    if n >= 2:
        std = (n - 1, 1)
        results["defining_representation"] = all(
            table[std, mu] == fixed_point_character(mu) - 1 for mu in table.cols
        )
    results["trace_identity"] = trace_identity_holds(table)
    return results


def trace_identity_holds(table: CharacterTable) -> bool:
    """Class sums with n - k cycles act on ``lam`` as e_k(contents 2..n) times the identity.

    Taking traces: sum over classes with n - k cycles of |class| chi^lam == e_k * d_lam.
    """
    from .partitions import contents_book_order

    n = table.n
    sizes = {mu: class_size(mu) for mu in table.cols}
    for lam, row in zip(table.rows, table.values):
        contents = contents_book_order(lam)[1:]
        d = dimension(lam)
        for k in range(n):
            lhs = sum(sizes[mu] * v for mu, v in zip(table.cols, row) if len(mu) == n - k)
            if lhs != elementary_symmetric(contents, k) * d:
                return False
    return True


__all__ = [
    "CharacterTable",
    "character",
    "character_table",
    "column_orthogonality_holds",
    "elementary_symmetric",
    "fixed_point_character",
    "row_orthogonality_holds",
    "trace_identity_holds",
    "verify_character_table",
]

