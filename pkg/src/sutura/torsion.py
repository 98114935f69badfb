"""Alexander polynomials of sutured triples and their Euler-characteristic data.

All conclusions here live at the level of Euler characteristics: the
coefficient of a Spin^c class in Delta is chi(SFH) of that class, so a class
with SFH != 0 but chi = 0 is invisible.  Verdicts built on top of this are
one-sided by construction.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from dataclasses import dataclass
from typing import Iterator, Mapping, NamedTuple, Sequence

from .complexes import PairComplex, module_order, specialize
from .errors import EmptySupport, NotSquare, RankMismatch, ZeroAlpha
from .laurent import Exponent, LaurentPoly, RingHom, apply_hom, normalize
from .polyhedra import hull_vertices
from . import polymatrix


class Verdict(str, enum.Enum):
    CANDIDATE_FIBERED = "CANDIDATE_FIBERED"
    NOT_FIBERED = "NOT_FIBERED"
    INCONCLUSIVE = "INCONCLUSIVE"
    CANDIDATE_PRODUCT = "CANDIDATE_PRODUCT"
    NOT_PRODUCT = "NOT_PRODUCT"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ChiSupport:
    """Spin^c classes weighted by chi(SFH), in normalized position.

    The Spin^c set is a torsor with no preferred origin, so the points are
    stored translated to have componentwise minimum zero.
    """

    points: Mapping[Exponent, int]
    rank: int

    def __init__(self, points: Mapping[Sequence[int], int], rank: int):
        pts = {tuple(e): int(c) for e, c in points.items() if c}
        if pts:
            lo = tuple(min(col) for col in zip(*pts)) if rank else ()
            pts = {tuple(a - b for a, b in zip(e, lo)): c for e, c in pts.items()}
        object.__setattr__(self, "points", dict(sorted(pts.items())))
        object.__setattr__(self, "rank", rank)

    def __hash__(self):
        return hash((self.rank, tuple(self.points.items())))

    def __iter__(self) -> Iterator[Exponent]:
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    @property
    def is_empty(self) -> bool:
        return not self.points

    def translate(self, v: Sequence[int]) -> dict[Exponent, int]:
        """Raw (un-normalized) translate, for invariance checks."""
        return {tuple(a + b for a, b in zip(e, v)): c for e, c in self.points.items()}

    def as_polynomial(self) -> LaurentPoly:
        return LaurentPoly(self.points, rank=self.rank)


def _num(a):
    f = Fraction(a)
    return int(f) if f.denominator == 1 else f


@dataclass(frozen=True)
class AlphaClass:
    """Class in H^1, acting on exponent vectors by the dot product.

    Entries are ints; rational entries are kept as Fractions for real classes.
    """

    coeffs: tuple

    def __init__(self, coeffs: Sequence):
        object.__setattr__(self, "coeffs", tuple(_num(a) for a in coeffs))

    def __call__(self, e: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(self.coeffs, e))

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)


def sutured_alexander(A: Sequence[Sequence[LaurentPoly]], psi: RingHom | None = None) -> LaurentPoly:
    """Normalized ``det(psi(A))`` for a square presentation matrix.

    Squareness is the balanced condition chi(M, R_-) = 0 of the reduced
    2-complex pair.
    """
    rows = [list(r) for r in A]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NotSquare(f"sutured_alexander needs a square matrix, got {n} rows of lengths "
                        f"{sorted({len(r) for r in rows})}: the pair must satisfy chi(X, Y) = 0")
    if psi is not None:
        rows = [[apply_hom(p, psi) for p in r] for r in rows]
        rank = psi.target_rank
    else:
        if n == 0:
            raise ValueError("the rank of an empty matrix must come from psi")
        rank = rows[0][0].rank
    return normalize(polymatrix.det(rows, rank))


def sutured_alexander_via_order(A: Sequence[Sequence[LaurentPoly]], psi: RingHom) -> LaurentPoly:
    """The same invariant through the module-order route (gcd of maximal minors)."""
    return module_order(specialize(A, psi))


def chi_support(delta: LaurentPoly) -> ChiSupport:
    return ChiSupport(normalize(delta).terms, delta.rank)


def extremal_spinc(S: ChiSupport) -> dict[Exponent, AlphaClass]:
    """Vertices of the support hull, each with a class minimised only there."""
    if S.is_empty:
        raise EmptySupport("extremal Spin^c structures of an empty support")
    return {v: AlphaClass(w) for v, w in hull_vertices(S.points).items()}


class ChiAlpha(NamedTuple):
    """chi(SFH_alpha).  The sign depends on an orientation choice we cannot make."""

    magnitude: int
    signed: int
    minimizers: tuple[Exponent, ...]
    sign_conventional: bool = True


def chi_sfh_alpha(S: ChiSupport, alpha: AlphaClass | Sequence[int]) -> ChiAlpha:
    """Sum of chi over the support points at which ``alpha`` is minimal."""
    if not isinstance(alpha, AlphaClass):
        alpha = AlphaClass(alpha)
    if S.is_empty:
        raise EmptySupport("chi(SFH_alpha) of an empty support")
    if len(alpha.coeffs) != S.rank:
        raise RankMismatch(f"alpha has {len(alpha.coeffs)} coordinates, support rank is {S.rank}")
    if alpha.is_zero:
        raise ZeroAlpha("alpha must be nonzero")
    d = min(alpha(e) for e in S.points)
    mins = tuple(e for e in S.points if alpha(e) == d)
    total = sum(S.points[e] for e in mins)
    return ChiAlpha(abs(total), total, mins)


def product_test(delta: LaurentPoly) -> Verdict:
    """Necessary condition for a product sutured manifold: Delta is a unit."""
    if delta.is_zero:
        return Verdict.INCONCLUSIVE
    return Verdict.CANDIDATE_PRODUCT if delta.is_unit else Verdict.NOT_PRODUCT
