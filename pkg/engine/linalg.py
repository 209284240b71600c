"""Exact rank, nullity and eigenvalue multiplicity over arbitrary-precision integers."""
from fractions import Fraction
from typing import List, Sequence, Tuple, Union
import logging
import re

from pydantic import BaseModel, ConfigDict, Field, model_validator

from engine.graph import SignedGraph

logger = logging.getLogger(__name__)

RationalLike = Union[Fraction, int, str]

_RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


class SymIntMatrix(BaseModel):
    model_config = ConfigDict(frozen=True)

    order: int = Field(..., ge=0, description="Matrix order n")
    entries: Tuple[Tuple[int, ...], ...] = Field(..., description="Row-major n x n integer entries")

    @model_validator(mode="after")
    def _check_symmetric(self) -> "SymIntMatrix":
        if len(self.entries) != self.order or any(len(row) != self.order for row in self.entries):
            raise ValueError(f"entries must form a {self.order} x {self.order} array")
        for i in range(self.order):
            for j in range(i + 1, self.order):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError(f"matrix is not symmetric at ({i}, {j})")
        return self


def parse_rational(value: RationalLike) -> Fraction:
    """Accept a Fraction, an int, or text of the form `p/q` or `p`; decimals are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    match = _RATIONAL.match(value)
    if not match:
        raise ValueError(f"{value!r} is not a rational of the form p/q or an integer")
    num, den = int(match.group(1)), int(match.group(2) or 1)
    if den == 0:
        raise ValueError(f"{value!r} has a zero denominator")
    return Fraction(num, den)


def adjacency(g: SignedGraph) -> SymIntMatrix:
    rows = [[0] * g.n for _ in range(g.n)]
    for u, v, s in g.edges:
        rows[u][v] = s
        rows[v][u] = s
    return SymIntMatrix(order=g.n, entries=tuple(tuple(r) for r in rows))


def shifted(matrix: SymIntMatrix, lam: RationalLike) -> SymIntMatrix:
    """den*M - num*I for lam = num/den; same rank as M - lam*I."""
    lam = parse_rational(lam)
    num, den = lam.numerator, lam.denominator
    rows = tuple(
        tuple(den * x - (num if i == j else 0) for j, x in enumerate(row))
        for i, row in enumerate(matrix.entries)
    )
    return SymIntMatrix(order=matrix.order, entries=rows)


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free (Bareiss) row reduction of an integer matrix.

    Pivots are taken as the first nonzero entry of the leftmost remaining column,
    so the elimination order is fully deterministic. Every division is exact.
    """
    a: List[List[int]] = [list(r) for r in rows]
    if not a:
        return 0
    n_rows, n_cols = len(a), len(a[0])
    rank = 0
    previous = 1
    for col in range(n_cols):
        pivot = next((i for i in range(rank, n_rows) if a[i][col]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        head = a[rank]
        p = head[col]
        for i in range(rank + 1, n_rows):
            row = a[i]
            f = row[col]
            for j in range(col + 1, n_cols):
                row[j] = (p * row[j] - f * head[j]) // previous
            row[col] = 0
        previous = p
        rank += 1
        if rank == n_rows:
            break
    return rank


def rank(matrix: SymIntMatrix) -> int:
    return integer_rank(matrix.entries)


def nullity(g: SignedGraph) -> int:
    return g.n - rank(adjacency(g))


def multiplicity(g: SignedGraph, lam: RationalLike) -> int:
    return g.n - rank(shifted(adjacency(g), lam))


def path_nullity_closed_form(n: int) -> int:
    return n % 2


def cycle_nullity_closed_form(length: int, sign: int) -> int:
    """Nullity of a signed cycle from its length and sign."""
    if (sign > 0 and length % 4 == 0) or (sign < 0 and length % 4 == 2):
        return 2
    return 0
