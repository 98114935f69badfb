"""Laurent polynomials over Z in n commuting variables.

A :class:`LaurentPoly` is an immutable, finitely supported map from integer
exponent vectors to nonzero Python ints, i.e. an element of the group ring
Z[F] of F = Z^n.  Units of Z[F] are the monomials ``+-x^e``; :func:`normalize`
picks a canonical representative of each class modulo units, so equality up
to units becomes plain ``==``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import NotDivisible, ParseError, RankMismatch, ZeroPolynomial
from .polyhedra import hull_vertices

Exponent = tuple[int, ...]


def _vadd(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def _vsub(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


def variable_names(rank: int) -> list[str]:
    if rank == 1:
        return ["t"]
    return [f"x{i + 1}" for i in range(rank)]


class LaurentPoly:
    """Element of Z[x_1^{+-1}, ..., x_n^{+-1}].

    >>> t = LaurentPoly.variable(0, 1)
    >>> str((t - 1) * (t + 1))
    't^2 - 1'
    """

    __slots__ = ("_terms", "rank", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], int] | None = None, rank: int | None = None):
        clean: dict[Exponent, int] = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(a) for a in e)
                if rank is None:
                    rank = len(e)
                elif len(e) != rank:
                    raise RankMismatch(f"exponent {e} has length {len(e)}, expected {rank}")
                c = int(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
            clean = {e: c for e, c in clean.items() if c}
        if rank is None:
            raise ValueError("rank is required for the zero polynomial")
        self._terms = clean
        self.rank = rank
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def _raw(cls, terms: dict, rank: int) -> "LaurentPoly":
        p = object.__new__(cls)
        p._terms = terms
        p.rank = rank
        p._hash = None
        return p

    @classmethod
    def zero(cls, rank: int) -> "LaurentPoly":
        return cls._raw({}, rank)

    @classmethod
    def constant(cls, c: int, rank: int) -> "LaurentPoly":
        return cls._raw({(0,) * rank: int(c)} if c else {}, rank)

    @classmethod
    def one(cls, rank: int) -> "LaurentPoly":
        return cls.constant(1, rank)

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff: int = 1) -> "LaurentPoly":
        e = tuple(int(a) for a in exponent)
        return cls._raw({e: int(coeff)} if coeff else {}, len(e))

    @classmethod
    def variable(cls, i: int, rank: int) -> "LaurentPoly":
        e = [0] * rank
        e[i] = 1
        return cls.monomial(e)

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[int], low: int = 0) -> "LaurentPoly":
        """One-variable polynomial ``sum coeffs[k] t^(low + k)``."""
        return cls({(low + k,): c for k, c in enumerate(coeffs)}, rank=1)

    @classmethod
    def parse(cls, text: str, rank: int, names: Sequence[str] | None = None) -> "LaurentPoly":
        return parse_laurent(text, rank, names)

    # -- basic accessors ----------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponent, int]:
        return dict(self._terms)

    def items(self):
        """Terms sorted by increasing lexicographic exponent."""
        return sorted(self._terms.items())

    @property
    def support(self) -> list[Exponent]:
        return sorted(self._terms)

    def coeff(self, e: Sequence[int]) -> int:
        return self._terms.get(tuple(e), 0)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_unit(self) -> bool:
        if len(self._terms) != 1:
            return False
        (c,) = self._terms.values()
        return abs(c) == 1

    def min_exponent(self) -> Exponent:
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no support")
        return tuple(min(col) for col in zip(*self._terms)) if self.rank else ()

    def max_exponent(self) -> Exponent:
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no support")
        return tuple(max(col) for col in zip(*self._terms)) if self.rank else ()

    def content(self) -> int:
        g = 0
        for c in self._terms.values():
            g = math.gcd(g, c)
        return g

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.rank != self.rank:
                raise RankMismatch(f"rank {self.rank} vs {other.rank}")
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other, self.rank)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out, self.rank)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()}, self.rank)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = _vadd(e1, e2)
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in out.items() if c}, self.rank)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_unit:
                raise NotDivisible("only units have negative powers")
            ((e, c),) = self._terms.items()
            return LaurentPoly.monomial(tuple(a * k for a in e), c ** (-k))
        result = LaurentPoly.one(self.rank)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, e: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial ``x^e``."""
        e = tuple(e)
        return LaurentPoly._raw({_vadd(k, e): c for k, c in self._terms.items()}, self.rank)

    def scale(self, c: int) -> "LaurentPoly":
        if not c:
            return LaurentPoly.zero(self.rank)
        return LaurentPoly._raw({e: v * c for e, v in self._terms.items()}, self.rank)

    def divexact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient in Z[F]; raises :class:`NotDivisible` otherwise."""
        other = self._coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero:
            return self
        a_lo, b_lo = self.min_exponent(), other.min_exponent()
        a = self.shift(tuple(-x for x in a_lo))
        b = other.shift(tuple(-x for x in b_lo))
        q = _poly_divexact(a._terms, b._terms, self.rank)
        return LaurentPoly._raw(q, self.rank).shift(_vsub(a_lo, b_lo))

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self.rank)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_laurent(self)

    def __repr__(self):
        return f"LaurentPoly({format_laurent(self)!r}, rank={self.rank})"


def _lead(terms: dict) -> Exponent:
    return max(terms)


def _poly_divexact(a: dict, b: dict, rank: int) -> dict:
    # long division in lex order; both inputs have nonnegative exponents
    rem = dict(a)
    lb = _lead(b)
    cb = b[lb]
    q: dict[Exponent, int] = {}
    while rem:
        la = _lead(rem)
        e = _vsub(la, lb)
        if any(x < 0 for x in e):
            raise NotDivisible("leading monomial not divisible")
        c, r = divmod(rem[la], cb)
        if r:
            raise NotDivisible("leading coefficient not divisible")
        q[e] = c
        for eb, vb in b.items():
            k = _vadd(eb, e)
            s = rem.get(k, 0) - c * vb
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    return q


# -- formatting and parsing -------------------------------------------------


def format_laurent(p: LaurentPoly, names: Sequence[str] | None = None) -> str:
    """Terms in decreasing lexicographic exponent order with explicit signs."""
    if p.is_zero:
        return "0"
    names = list(names) if names is not None else variable_names(p.rank)
    out = []
    for e, c in sorted(p._terms.items(), reverse=True):
        factors = []
        for name, a in zip(names, e):
            if a == 1:
                factors.append(name)
            elif a:
                factors.append(f"{name}^{a}")
        mono = "*".join(factors)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|\^)|([-+*()]))")


def parse_laurent(text: str, rank: int, names: Sequence[str] | None = None) -> LaurentPoly:
    """Parse a sum of terms like ``2*x1^-1*x2 - 3 + t^2``.

    Accepted variable names default to ``t``/``x`` (rank 1) or ``x1..xn``;
    multiplication may be written with ``*`` or by juxtaposition.  No
    parentheses.
    """
    if names is None:
        names = variable_names(rank)
        if rank == 1:
            names = ["t", "x", "x1"]
            index = {"t": 0, "x": 0, "x1": 0}
        else:
            index = {n: i for i, n in enumerate(names)}
    else:
        index = {n: i for i, n in enumerate(names)}
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r} in polynomial {text!r}")
        pos = m.end()
        num, name, powop, op = m.groups()
        if num is not None:
            toks.append(("num", int(num)))
        elif name is not None:
            toks.append(("name", name))
        elif powop is not None:
            toks.append(("pow", None))
        else:
            if op in "()":
                raise ParseError(f"parentheses are not supported: {text!r}")
            toks.append((op, None))
    if not toks:
        raise ParseError("empty polynomial")
    terms: dict[Exponent, int] = {}
    i = 0

    def expect_int():
        nonlocal i
        sign = 1
        if i < len(toks) and toks[i][0] in "+-":
            sign = -1 if toks[i][0] == "-" else 1
            i += 1
        if i >= len(toks) or toks[i][0] != "num":
            raise ParseError(f"expected integer exponent in {text!r}")
        v = toks[i][1]
        i += 1
        return sign * v

    first = True
    while i < len(toks):
        sign = 1
        if toks[i][0] in "+-":
            sign = -1 if toks[i][0] == "-" else 1
            i += 1
        elif not first:
            raise ParseError(f"expected '+' or '-' between terms in {text!r}")
        first = False
        coeff = 1
        exp = [0] * rank
        seen = False
        while i < len(toks) and toks[i][0] in ("num", "name", "*"):
            kind, val = toks[i]
            i += 1
            if kind == "*":
                if not seen or i >= len(toks) or toks[i][0] not in ("num", "name"):
                    raise ParseError(f"dangling '*' in {text!r}")
                continue
            seen = True
            k = 1
            if i < len(toks) and toks[i][0] == "pow":
                i += 1
                k = expect_int()
            if kind == "num":
                if k < 0:
                    raise ParseError(f"negative power of an integer in {text!r}")
                coeff *= val ** k
            else:
                if val not in index:
                    raise ParseError(f"unknown variable {val!r} (expected one of {sorted(index)})")
                exp[index[val]] += k
        if not seen:
            raise ParseError(f"missing term in {text!r}")
        e = tuple(exp)
        terms[e] = terms.get(e, 0) + sign * coeff
    return LaurentPoly(terms, rank=rank)


# -- unit normalisation, gcd, Newton polytope -------------------------------


def normalize(p: LaurentPoly) -> LaurentPoly:
    """Canonical representative of ``p`` modulo units ``+-x^e``.

    Shift so the componentwise minimum exponent is zero, then make the
    coefficient at the lexicographically smallest support point positive.
    """
    if p.is_zero:
        return p
    lo = p.min_exponent()
    q = p.shift(tuple(-a for a in lo))
    if q._terms[min(q._terms)] < 0:
        q = -q
    return q


def doteq(p: LaurentPoly, q: LaurentPoly) -> bool:
    """``p`` and ``q`` agree up to multiplication by a unit."""
    return normalize(p) == normalize(q)


def _split(p: dict, var: int) -> dict[int, dict]:
    # view p as a polynomial in x_var with coefficients free of x_var
    out: dict[int, dict] = {}
    for e, c in p.items():
        d = e[var]
        k = e[:var] + (0,) + e[var + 1:]
        out.setdefault(d, {})[k] = c
    return out


def _join(parts: dict[int, dict], var: int) -> dict:
    out = {}
    for d, coeffs in parts.items():
        for k, c in coeffs.items():
            out[k[:var] + (d,) + k[var + 1:]] = c
    return out


def _pmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = _vadd(e1, e2)
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _psub(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) - c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def _pshift(a: dict, var: int, d: int) -> dict:
    return {e[:var] + (e[var] + d,) + e[var + 1:]: c for e, c in a.items()}


def _is_const(a: dict) -> bool:
    return len(a) == 1 and not any(next(iter(a)))


def _content(p: dict, var: int, nvars: int, rank: int) -> dict:
    # gcd of the coefficients of p viewed as a polynomial in x_var
    g: dict = {}
    for coeffs in _split(p, var).values():
        g = _gcd(g, coeffs, nvars, rank)
        if _is_const(g) and abs(next(iter(g.values()))) == 1:
            break
    return g


def _gcd(a: dict, b: dict, nvars: int, rank: int) -> dict:
    """gcd in Z[x_0..x_{nvars-1}]; variables >= nvars do not occur."""
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    if nvars == 0:
        (ca,), (cb,) = a.values(), b.values()
        return {(0,) * rank: math.gcd(ca, cb)}
    var = nvars - 1
    if all(e[var] == 0 for e in a) and all(e[var] == 0 for e in b):
        return _gcd(a, b, nvars - 1, rank)
    ca = _content(a, var, nvars - 1, rank)
    cb = _content(b, var, nvars - 1, rank)
    g_cont = _gcd(ca, cb, nvars - 1, rank)
    pa = _poly_divexact(a, ca, rank)
    pb = _poly_divexact(b, cb, rank)
    da = max(e[var] for e in pa)
    db = max(e[var] for e in pb)
    if da < db:
        pa, pb, da, db = pb, pa, db, da
    # primitive remainder sequence in x_var
    while db > 0:
        r = _prem(pa, pb, var)
        if not r:
            break
        r = _poly_divexact(r, _content(r, var, nvars - 1, rank), rank)
        pa, pb = pb, r
        da, db = db, max(e[var] for e in r)
    if pb and db == 0:
        g_prim = {(0,) * rank: 1}
    else:
        g_prim = pb
    return _pmul(g_cont, g_prim)


def _prem(a: dict, b: dict, var: int) -> dict:
    db = max(e[var] for e in b)
    lcb = _split(b, var)[db]
    r = dict(a)
    while r:
        dr = max(e[var] for e in r)
        if dr < db:
            break
        lcr = _split(r, var)[dr]
        r = _psub(_pmul(r, lcb), _pshift(_pmul(b, lcr), var, dr - db))
    return r


def gcd_laurent(ps: Iterable[LaurentPoly]) -> LaurentPoly:
    """Normalized gcd in the UFD Z[F]; the gcd of only zeros is zero."""
    ps = list(ps)
    if not ps:
        raise ValueError("gcd of an empty list")
    rank = ps[0].rank
    g: dict = {}
    for p in ps:
        if p.rank != rank:
            raise RankMismatch(f"rank {p.rank} vs {rank}")
        if p.is_zero:
            continue
        q = normalize(p)
        g = _gcd(g, q._terms, rank, rank)
        if _is_const(g) and abs(next(iter(g.values()))) == 1:
            break
    return normalize(LaurentPoly._raw(g, rank))


def newton_vertices(p: LaurentPoly) -> frozenset[Exponent]:
    """Vertices of the convex hull of the support of ``p``."""
    if p.is_zero:
        raise ZeroPolynomial("the zero polynomial has empty support")
    return frozenset(hull_vertices(p.support))


# -- ring homomorphisms -----------------------------------------------------


@dataclass(frozen=True)
class RingHom:
    """Ring map Z[Z^source] -> Z[Z^target] induced by an integer matrix.

    Column ``j`` of ``matrix`` is the image of the ``j``-th source basis
    exponent.  Dimensions are stored explicitly so that 0-row and 0-column
    maps are representable.
    """

    matrix: tuple[tuple[int, ...], ...]
    source_rank: int
    target_rank: int

    def __init__(self, matrix: Sequence[Sequence[int]], source_rank: int | None = None,
                 target_rank: int | None = None):
        rows = tuple(tuple(int(a) for a in row) for row in matrix)
        if target_rank is None:
            target_rank = len(rows)
        if source_rank is None:
            if not rows:
                raise ValueError("source_rank is required for a map to rank 0")
            source_rank = len(rows[0])
        if len(rows) != target_rank or any(len(r) != source_rank for r in rows):
            raise RankMismatch(f"matrix shape does not match {target_rank} x {source_rank}")
        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "source_rank", source_rank)
        object.__setattr__(self, "target_rank", target_rank)

    @classmethod
    def identity(cls, n: int) -> "RingHom":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def trivial(cls, source_rank: int, target_rank: int = 0) -> "RingHom":
        return cls([[0] * source_rank for _ in range(target_rank)], source_rank, target_rank)

    @property
    def is_trivial(self) -> bool:
        return not any(any(row) for row in self.matrix)

    def image(self, e: Sequence[int]) -> Exponent:
        if len(e) != self.source_rank:
            raise RankMismatch(f"exponent of length {len(e)} for source rank {self.source_rank}")
        return tuple(sum(m * a for m, a in zip(row, e)) for row in self.matrix)

    def compose(self, inner: "RingHom") -> "RingHom":
        """``self o inner``."""
        if inner.target_rank != self.source_rank:
            raise RankMismatch(f"cannot compose: {inner.target_rank} != {self.source_rank}")
        cols = list(zip(*inner.matrix)) if inner.target_rank else \
            [() for _ in range(inner.source_rank)]
        imgs = [self.image(c) for c in cols]
        rows = [[imgs[j][i] for j in range(inner.source_rank)] for i in range(self.target_rank)]
        return RingHom(rows, inner.source_rank, self.target_rank)

    def __call__(self, p: LaurentPoly) -> LaurentPoly:
        return apply_hom(p, self)


def apply_hom(p: LaurentPoly, psi: RingHom) -> LaurentPoly:
    """Push ``p`` forward along ``psi``, collecting terms."""
    if p.rank != psi.source_rank:
        raise RankMismatch(f"polynomial rank {p.rank} vs map source rank {psi.source_rank}")
    out: dict[Exponent, int] = {}
    for e, c in p._terms.items():
        f = psi.image(e)
        out[f] = out.get(f, 0) + c
    return LaurentPoly._raw({e: c for e, c in out.items() if c}, psi.target_rank)
