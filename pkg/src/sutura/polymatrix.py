"""Matrices over Z[F], stored as lists of rows of :class:`LaurentPoly`.

Determinants and ranks use fraction-free (Bareiss) elimination: every
intermediate entry is a minor of the input, so the divisions are exact and
no rational functions are ever formed.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterator, Sequence

from .laurent import LaurentPoly

PolyMatrix = list[list[LaurentPoly]]


def shape(a: Sequence[Sequence[LaurentPoly]]) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def transpose(a: Sequence[Sequence[LaurentPoly]], cols: int | None = None) -> PolyMatrix:
    if not a:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*a)]


def det(a: Sequence[Sequence[LaurentPoly]], rank: int) -> LaurentPoly:
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return LaurentPoly.one(rank)
    m = [list(row) for row in a]
    sign = 1
    prev = LaurentPoly.one(rank)
    for k in range(n - 1):
        if m[k][k].is_zero:
            p = next((i for i in range(k + 1, n) if not m[i][k].is_zero), None)
            if p is None:
                return LaurentPoly.zero(rank)
            m[k], m[p] = m[p], m[k]
            sign = -sign
        piv = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                num = m[i][j] * piv - mik * m[k][j]
                m[i][j] = num.divexact(prev) if not num.is_zero else num
        prev = piv
    d = m[n - 1][n - 1]
    return -d if sign < 0 else d


def rank(a: Sequence[Sequence[LaurentPoly]], rank_F: int, cols: int | None = None) -> int:
    """Rank over the fraction field Q(F)."""
    rows = len(a)
    ncols = cols if cols is not None else (len(a[0]) if a else 0)
    m = [list(row) for row in a]
    r = 0
    prev = LaurentPoly.one(rank_F)
    for c in range(ncols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if not m[i][c].is_zero), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        for i in range(r + 1, rows):
            mic = m[i][c]
            for j in range(c + 1, ncols):
                num = piv * m[i][j] - mic * m[r][j]
                m[i][j] = num.divexact(prev) if not num.is_zero else num
            m[i][c] = LaurentPoly.zero(rank_F)
        prev = piv
        r += 1
    return r


def minors(a: Sequence[Sequence[LaurentPoly]], k: int, rank_F: int) -> Iterator[LaurentPoly]:
    """All k x k minors, row subsets outer, column subsets inner, both lexicographic."""
    rows, cols = shape(a)
    for rs in combinations(range(rows), k):
        for cs in combinations(range(cols), k):
            yield det([[a[i][j] for j in cs] for i in rs], rank_F)
