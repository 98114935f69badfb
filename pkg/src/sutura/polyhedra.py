"""Exact feasibility of homogeneous strict linear systems.

Everything here is over the rationals.  The workhorse is :func:`solve_strict`,
which decides whether ``{a . x > 0 for every row a}`` has a solution by
Fourier-Motzkin elimination and, if it does, returns an integral witness.
Open normal cones of lattice polytopes live in dimension <= 4 in practice, so
the quadratic row growth of the elimination is harmless.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence


def primitive(row: Sequence) -> tuple[int, ...]:
    """Scale a rational row by a positive factor to a primitive integer row."""
    den = 1
    for a in row:
        den = math.lcm(den, Fraction(a).denominator)
    ints = [int(Fraction(a) * den) for a in row]
    g = 0
    for a in ints:
        g = math.gcd(g, a)
    if g == 0:
        return tuple(ints)
    return tuple(a // g for a in ints)


def _dot(a: Sequence, x: Sequence):
    return sum(ai * xi for ai, xi in zip(a, x))


def _pick(lo: Fraction | None, hi: Fraction | None) -> Fraction:
    # integer closest to zero strictly inside (lo, hi) when one exists
    if lo is None and hi is None:
        return Fraction(0)
    if hi is None:
        return Fraction(max(0, math.floor(lo) + 1))
    if lo is None:
        return Fraction(min(0, math.ceil(hi) - 1))
    a, b = math.floor(lo) + 1, math.ceil(hi) - 1
    if a <= b:
        if a <= 0 <= b:
            return Fraction(0)
        return Fraction(a if a > 0 else b)
    return (lo + hi) / 2


def solve_strict(rows: Iterable[Sequence], n: int) -> tuple[int, ...] | None:
    """Return a primitive integer ``x`` with ``a . x > 0`` for all rows, or None.

    An empty row list is satisfied by the zero vector only in the degenerate
    sense; callers wanting a nonzero witness must add their own condition.
    """
    cur = {primitive(r) for r in rows}
    for r in cur:
        if len(r) != n:
            raise ValueError(f"row {r} does not have length {n}")
    stages = []
    for k in reversed(range(n)):
        if any(not any(r[: k + 1]) for r in cur):
            return None
        pos = [r for r in cur if r[k] > 0]
        neg = [r for r in cur if r[k] < 0]
        rest = [r for r in cur if r[k] == 0]
        stages.append((k, pos, neg))
        if k == 0:
            if pos and neg:
                return None
            cur = set()
            break
        new = set(rest)
        for p in pos:
            for q in neg:
                comb = tuple(-q[k] * pi + p[k] * qi for pi, qi in zip(p, q))
                new.add(primitive(comb))
        cur = new
    if n == 0 and cur:
        return None
    x = [Fraction(0)] * n
    for k, pos, neg in reversed(stages):
        lo = hi = None
        for r in pos:
            bound = Fraction(-_dot(r[:k], x[:k]), r[k])
            lo = bound if lo is None else max(lo, bound)
        for r in neg:
            bound = Fraction(-_dot(r[:k], x[:k]), r[k])
            hi = bound if hi is None else min(hi, bound)
        x[k] = _pick(lo, hi)
    return primitive(x)


def strictly_satisfies(rows: Iterable[Sequence], x: Sequence) -> bool:
    return all(_dot(r, x) > 0 for r in rows)


def normal_cone_rows(points: Sequence[Sequence[int]], v: Sequence[int]) -> list[tuple[int, ...]]:
    """Rows ``u - v`` for every support point ``u`` other than ``v``."""
    v = tuple(v)
    return [tuple(ui - vi for ui, vi in zip(u, v)) for u in points if tuple(u) != v]


def hull_vertices(points: Iterable[Sequence[int]]) -> dict[tuple[int, ...], tuple[int, ...]]:
    """Vertices of the convex hull of a finite lattice point set.

    Maps each vertex to a witness functional that is uniquely minimised there.
    """
    pts = sorted({tuple(p) for p in points})
    if not pts:
        return {}
    n = len(pts[0])
    out = {}
    if n == 0:
        return {(): ()}
    if n == 1:
        out[pts[0]] = (1,)
        if len(pts) > 1:
            out[pts[-1]] = (-1,)
        return out
    for v in pts:
        w = solve_strict(normal_cone_rows(pts, v), n)
        if w is not None:
            if not any(w):
                # single point: any nonzero functional works
                w = (1,) + (0,) * (n - 1)
            out[v] = w
    return out
