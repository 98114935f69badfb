"""Presentation matrices of pair homology and their orders.

A :class:`PairComplex` keeps the single boundary matrix ``C_2 -> C_1`` of a
2-complex pair whose 0-cells all lie in the subcomplex.  Its cokernel is
H_1 of the pair with Z[F] coefficients; the order of that module is the gcd
of the maximal minors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import NamedTuple, Sequence

from .errors import NotConnected, RankMismatch
from .laurent import LaurentPoly, RingHom, apply_hom, gcd_laurent, normalize
from . import polymatrix


@dataclass(frozen=True)
class PairComplex:
    """Boundary matrix with ``s`` rows (1-cells) and ``r >= s`` columns (2-cells).

    Zero columns are appended on construction when there are fewer 2-cells
    than 1-cells; ``n_cells`` remembers the original column count.
    """

    boundary: tuple[tuple[LaurentPoly, ...], ...]
    rank: int
    n_cells: int = field(default=-1)
    labels: tuple[str, ...] | None = None

    def __init__(self, boundary: Sequence[Sequence[LaurentPoly]], rank: int | None = None,
                 labels: Sequence[str] | None = None):
        rows = [list(r) for r in boundary]
        if not rows:
            raise ValueError("a pair complex needs at least one 1-cell (s >= 1)")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged boundary matrix")
        if rank is None:
            entries = [p for r in rows for p in r]
            if not entries:
                raise ValueError("rank is required for a matrix with no columns")
            rank = entries[0].rank
        for r in rows:
            for p in r:
                if p.rank != rank:
                    raise RankMismatch(f"entry of rank {p.rank} in a rank {rank} matrix")
        s = len(rows)
        if ncols < s:
            for r in rows:
                r.extend(LaurentPoly.zero(rank) for _ in range(s - ncols))
        object.__setattr__(self, "boundary", tuple(tuple(r) for r in rows))
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "n_cells", ncols)
        object.__setattr__(self, "labels", tuple(labels) if labels is not None else None)

    @property
    def s(self) -> int:
        return len(self.boundary)

    @property
    def r(self) -> int:
        return len(self.boundary[0])

    def with_zero_columns(self, k: int) -> "PairComplex":
        z = LaurentPoly.zero(self.rank)
        return PairComplex([list(row) + [z] * k for row in self.boundary], self.rank)


def specialize(boundary: Sequence[Sequence[LaurentPoly]], psi: RingHom) -> PairComplex:
    """Tensor the boundary matrix with Z[F] along ``psi``."""
    return PairComplex([[apply_hom(p, psi) for p in row] for row in boundary], psi.target_rank)


def module_order(C: PairComplex) -> LaurentPoly:
    """Normalized gcd of all ``s x s`` minors; stops early once the gcd is 1."""
    s, r = C.s, C.r
    one = LaurentPoly.one(C.rank)
    g = LaurentPoly.zero(C.rank)
    rows = C.boundary
    for cs in combinations(range(r), s):
        if any(all(rows[i][j].is_zero for i in range(s)) for j in cs):
            continue
        d = polymatrix.det([[rows[i][j] for j in cs] for i in range(s)], C.rank)
        if d.is_zero:
            continue
        g = gcd_laurent([g, d])
        if g == one:
            break
    return normalize(g)


class QRanks(NamedTuple):
    """Ranks over Q(F): of the boundary map, its cokernel (H_1) and kernel (H_2)."""

    rank: int
    coker: int
    ker: int


def qf_homology_ranks(C: PairComplex) -> QRanks:
    rk = polymatrix.rank(C.boundary, C.rank, C.r)
    return QRanks(rk, C.s - rk, C.n_cells - rk)


def h0_pair(connected: bool, y_empty: bool, psi_trivial: bool) -> int:
    """Rank over Q(F) of H_0 of a pair (X, Y) with X connected."""
    if not connected:
        raise NotConnected("H_0 of the pair is only described for connected X")
    return 1 if (y_empty and psi_trivial) else 0
