"""Fibered classes at the Euler-characteristic level.

For a decoration ``c`` (one curve class per boundary torus), C(M, c) is the
set of classes that pair nonzero with every curve.  Inside C(M, c), a class
is a fibered candidate exactly when it is minimised at a single extremal
point of the chi-support whose coefficient is +-1; every such point
contributes its open normal cone minus the hyperplanes ``alpha(c_i) = 0``.

|chi| = 1 is necessary for SFH_alpha = Z but not sufficient, so the positive
verdict is CANDIDATE_FIBERED, never "fibered".  NOT_FIBERED is sound: two
visible minimisers, or a single one with |chi| != 1, rule out SFH_alpha = Z.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .errors import BadDecoration, EmptySupport, NotInSupport, RankMismatch, ZeroAlpha
from .laurent import Exponent
from .polyhedra import normal_cone_rows, primitive, solve_strict
from .torsion import AlphaClass, ChiSupport, Verdict, chi_sfh_alpha, extremal_spinc


@dataclass(frozen=True)
class Decoration:
    curves: tuple[tuple[int, ...], ...]

    def __init__(self, curves: Iterable[Sequence[int]]):
        cs = tuple(tuple(int(a) for a in c) for c in curves)
        if not cs:
            raise BadDecoration("a decoration needs at least one curve")
        if len({len(c) for c in cs}) != 1:
            raise BadDecoration("decoration curves must live in the same H_1")
        object.__setattr__(self, "curves", cs)

    @property
    def rank(self) -> int:
        return len(self.curves[0])


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _canon_rows(rows: Iterable[Sequence]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted({primitive(r) for r in rows}))


def _canon_hyperplanes(rows: Iterable[Sequence]) -> tuple[tuple[int, ...], ...]:
    out = set()
    for r in rows:
        p = primitive(r)
        # a hyperplane has no orientation: fix the sign of its first nonzero entry
        first = next((a for a in p if a), 0)
        out.add(tuple(-a for a in p) if first < 0 else p)
    return tuple(sorted(out))


@dataclass(frozen=True)
class RationalCone:
    """``{a . alpha > 0 for a in strict} minus {h . alpha = 0 for h in excluded}``."""

    strict: tuple[tuple[int, ...], ...]
    excluded: tuple[tuple[int, ...], ...]
    dim: int

    def __init__(self, strict: Iterable[Sequence], excluded: Iterable[Sequence] = (), dim: int | None = None):
        strict = [tuple(r) for r in strict]
        excluded = [tuple(h) for h in excluded]
        if dim is None:
            if not (strict or excluded):
                raise ValueError("dimension is required for the whole space")
            dim = len((strict or excluded)[0])
        # a zero row encodes emptiness: 0 > 0 fails, and h = 0 excludes everything
        empty = any(not any(r) for r in strict) or any(not any(h) for h in excluded)
        rows = _canon_rows(r for r in strict if any(r))
        if empty:
            rows = ((0,) * dim,) + rows
        object.__setattr__(self, "strict", rows)
        object.__setattr__(self, "excluded", _canon_hyperplanes(h for h in excluded if any(h)))
        object.__setattr__(self, "dim", dim)

    def contains(self, alpha: Sequence) -> bool:
        if len(alpha) != self.dim:
            raise RankMismatch(f"class of length {len(alpha)} in a cone of dimension {self.dim}")
        return all(_dot(a, alpha) > 0 for a in self.strict) and \
            all(_dot(h, alpha) != 0 for h in self.excluded)

    def is_empty(self) -> bool:
        return self.witness() is None

    def witness(self) -> tuple[int, ...] | None:
        """An integral class in the cone, avoiding every excluded hyperplane."""
        if self.dim == 0:
            return None
        base = solve_strict(self.strict, self.dim)
        if base is None:
            return None
        # open set minus hyperplanes: a small generic nudge of a scaled point lands inside
        for scale in (1, 2, 4, 8, 16, 32, 64):
            for step in range(1, 4):
                for delta in product(range(-step, step + 1), repeat=self.dim):
                    cand = tuple(scale * b + d for b, d in zip(base, delta))
                    if any(cand) and self.contains(cand):
                        return primitive(cand)
        return None

    def intersect(self, other: "RationalCone") -> "RationalCone":
        return RationalCone(self.strict + other.strict, self.excluded + other.excluded, self.dim)


@dataclass(frozen=True)
class RationalConeSet:
    cones: frozenset

    def __init__(self, cones: Iterable[RationalCone]):
        object.__setattr__(self, "cones", frozenset(c for c in cones if not c.is_empty()))

    def contains(self, alpha: Sequence) -> bool:
        return any(c.contains(alpha) for c in self.cones)

    def __len__(self):
        return len(self.cones)

    def __iter__(self):
        return iter(sorted(self.cones, key=lambda c: (c.strict, c.excluded)))


def decoration_pairing(alpha: AlphaClass | Sequence[int], c: Decoration) -> tuple[int, bool]:
    """``(s(alpha), alpha in C(M, c))``; s counts curves on which alpha vanishes."""
    a = alpha.coeffs if isinstance(alpha, AlphaClass) else tuple(alpha)
    if not any(a):
        raise ZeroAlpha("alpha must be nonzero")
    if len(a) != c.rank:
        raise RankMismatch(f"alpha has {len(a)} coordinates, decoration curves have {c.rank}")
    s = sum(1 for ci in c.curves if _dot(a, ci) == 0)
    return s, s == 0


def normal_cone(S: ChiSupport, v: Sequence[int]) -> RationalCone:
    """Classes minimised over the support at ``v`` and nowhere else."""
    v = tuple(v)
    if v not in S.points:
        raise NotInSupport(f"{v} is not a support point")
    return RationalCone(normal_cone_rows(list(S.points), v), (), S.rank)


@dataclass(frozen=True)
class FiberedCone:
    cone: RationalCone
    vertex: Exponent
    chi: int
    decoration: Decoration


@dataclass
class FiberedCones:
    """Candidate fibered cones plus per-class classification."""

    supports: tuple[ChiSupport, ...]
    decorations: tuple[Decoration, ...]
    cones: list[FiberedCone] = field(default_factory=list)
    # (decoration index, extremal point, chi, |chi| == 1)
    vertices: list[tuple[int, Exponent, int, bool]] = field(default_factory=list)

    @property
    def cone_set(self) -> RationalConeSet:
        return RationalConeSet(fc.cone for fc in self.cones)

    @property
    def exists(self) -> bool:
        """Some extremal point carries |chi| = 1 (the chi-level existence criterion)."""
        return any(ok for *_, ok in self.vertices)

    def verdict(self, alpha: AlphaClass | Sequence[int]) -> tuple[Verdict, str]:
        a = AlphaClass(alpha.coeffs if isinstance(alpha, AlphaClass) else alpha).coeffs
        if not any(a):
            raise ZeroAlpha("alpha must be nonzero")
        if any(fc.cone.contains(a) for fc in self.cones):
            return Verdict.CANDIDATE_FIBERED, "unique minimiser with |chi| = 1, alpha(c_i) != 0 for all i"
        reasons = []
        for S, c in zip(self.supports, self.decorations):
            _, in_c = decoration_pairing(a, c)
            if not in_c:
                continue
            chi = chi_sfh_alpha(S, a)
            if len(chi.minimizers) > 1:
                reasons.append(f"{len(chi.minimizers)} Spin^c classes with chi != 0 pair minimally")
            elif chi.magnitude != 1:
                reasons.append(f"|chi(SFH_alpha)| = {chi.magnitude} != 1")
            else:
                # unreachable: a unique minimiser with |chi| = 1 lies in an emitted cone
                raise AssertionError("cone path and coefficient path disagree")
        if reasons:
            return Verdict.NOT_FIBERED, "; ".join(sorted(set(reasons)))
        return Verdict.INCONCLUSIVE, "alpha vanishes on a decoration curve for every decoration (s(alpha) >= 1)"


def fibered_cones(S: ChiSupport | Sequence[ChiSupport], decorations: Sequence[Decoration]) -> FiberedCones:
    """Union over decorations of the chi-level cones M(M, c).

    ``S`` is either one support shared by all decorations or one support per
    decoration, in the same order.
    """
    decorations = tuple(decorations)
    if not decorations:
        raise BadDecoration("at least one decoration is required")
    supports = (S,) * len(decorations) if isinstance(S, ChiSupport) else tuple(S)
    if len(supports) != len(decorations):
        raise BadDecoration("one support per decoration is required")
    out = FiberedCones(supports, decorations)
    for k, (Sk, c) in enumerate(zip(supports, decorations)):
        if Sk.is_empty:
            raise EmptySupport("the chi-support is empty (Delta = 0)")
        if c.rank != Sk.rank:
            raise RankMismatch(f"decoration rank {c.rank} vs support rank {Sk.rank}")
        for v, _w in sorted(extremal_spinc(Sk).items()):
            chi = Sk.points[v]
            ok = abs(chi) == 1
            out.vertices.append((k, v, chi, ok))
            if ok:
                cone = normal_cone(Sk, v).intersect(RationalCone((), c.curves, Sk.rank))
                if not cone.is_empty():
                    out.cones.append(FiberedCone(cone, v, chi, c))
    return out


@dataclass
class SingleTorusReport:
    result: FiberedCones
    exists: bool
    rays: dict


def single_torus_report(S: ChiSupport, c: Decoration, alphas: Iterable[Sequence[int]] | None = None
                        ) -> SingleTorusReport:
    """One boundary torus: the fibered set is exactly the cone set of one decoration."""
    if len(c.curves) != 1:
        raise BadDecoration(f"a single torus carries one decoration curve, got {len(c.curves)}")
    if not any(c.curves[0]):
        raise BadDecoration("the decoration curve must be non-torsion in H_1")
    res = fibered_cones(S, [c])
    if alphas is None:
        alphas = default_rays(S.rank)
    rays = {tuple(a): res.verdict(a) for a in alphas}
    return SingleTorusReport(res, res.exists, rays)


def default_rays(n: int) -> list[tuple[int, ...]]:
    """``+-e_i`` for each basis vector."""
    out = []
    for i in range(n):
        for s in (1, -1):
            e = [0] * n
            e[i] = s
            out.append(tuple(e))
    return out


def scale_class(alpha: Sequence[int], q: Fraction | int) -> tuple:
    return tuple(Fraction(a) * q for a in alpha)
