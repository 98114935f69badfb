"""Finitely presented groups, abelianization and Fox calculus.

Words are tuples of ``(generator, +-1)`` letters.  The text syntax is
space-separated single letters, lowercase for a generator and uppercase for
its inverse: ``"a b A B"`` is the commutator ``a b a^-1 b^-1``.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import IndexOutOfRange, ParseError, RankMismatch
from .laurent import LaurentPoly, RingHom
from .smith import SmithForm, smith_normal_form

Letter = tuple[int, int]


def free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for g, e in letters:
        if e not in (1, -1):
            raise ValueError(f"letter exponent must be +-1, got {e}")
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", free_reduce(self.letters))

    @classmethod
    def parse(cls, text: str, names: Sequence[str] | None = None) -> "Word":
        names = list(names) if names is not None else list(string.ascii_lowercase)
        index = {n: i for i, n in enumerate(names)}
        letters = []
        for tok in text.split():
            if tok in index:
                letters.append((index[tok], 1))
            elif tok.lower() in index and tok != tok.lower():
                letters.append((index[tok.lower()], -1))
            elif tok.endswith("^-1") and tok[:-3] in index:
                letters.append((index[tok[:-3]], -1))
            else:
                raise ParseError(f"unknown letter {tok!r} in word {text!r}")
        return cls(tuple(letters))

    def format(self, names: Sequence[str] | None = None) -> str:
        names = list(names) if names is not None else list(string.ascii_lowercase)
        return " ".join(names[g] if e > 0 else names[g].upper() for g, e in self.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __len__(self):
        return len(self.letters)

    def exponent_sums(self, n: int) -> list[int]:
        out = [0] * n
        for g, e in self.letters:
            out[g] += e
        return out


@dataclass(frozen=True)
class GroupPresentation:
    n_generators: int
    relators: tuple[Word, ...] = ()
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        rels = tuple(r if isinstance(r, Word) else Word(tuple(r)) for r in self.relators)
        for r in rels:
            for g, _ in r.letters:
                if not 0 <= g < self.n_generators:
                    raise IndexOutOfRange(f"relator uses generator {g}, only {self.n_generators} exist")
        object.__setattr__(self, "relators", rels)
        if self.names is not None:
            names = tuple(self.names)
            if len(names) != self.n_generators:
                raise ValueError("one name per generator is required")
            object.__setattr__(self, "names", names)

    @classmethod
    def parse(cls, generators: Sequence[str], relators: Iterable[str]) -> "GroupPresentation":
        gens = list(generators)
        return cls(len(gens), tuple(Word.parse(r, gens) for r in relators), tuple(gens))

    def relator_matrix(self) -> list[list[int]]:
        return [r.exponent_sums(self.n_generators) for r in self.relators]


@dataclass
class AbelianStructure:
    """H_1 = Z^free_rank + sum Z/d_i, with the projection onto the free part.

    ``to_free`` is a :class:`RingHom` from the free abelian group on the
    generators onto Z^free_rank; it kills torsion.
    """

    free_rank: int
    torsion_divisors: list[int]
    to_free: RingHom
    smith: SmithForm = field(repr=False)


def abelianization(G: GroupPresentation) -> AbelianStructure:
    n = G.n_generators
    R = G.relator_matrix()
    snf = smith_normal_form(R, len(R), n)
    rank = snf.rank
    divisors = [d for d in snf.diagonal if d > 1]
    # generator j maps to row j of V in the diagonalising basis
    rows = [[snf.V[j][k] for j in range(n)] for k in range(rank, n)]
    to_free = RingHom(rows, n, n - rank)
    return AbelianStructure(n - rank, divisors, to_free, snf)


def fox_derivative(w: Word, j: int, target: RingHom) -> LaurentPoly:
    """Fox derivative of ``w`` in generator ``j``, pushed into Z[F] by ``target``.

    ``target`` sends the free abelian group on the generators to F.
    """
    n = target.source_rank
    if not 0 <= j < n:
        raise IndexOutOfRange(f"generator {j} out of range for {n} generators")
    images = [target.image([int(i == g) for i in range(n)]) for g in range(n)]
    m = target.target_rank
    prefix = (0,) * m
    out: dict[tuple[int, ...], int] = {}
    for g, e in w.letters:
        if g >= n:
            raise IndexOutOfRange(f"letter {g} out of range for {n} generators")
        img = images[g]
        if e > 0:
            if g == j:
                out[prefix] = out.get(prefix, 0) + 1
            prefix = tuple(a + b for a, b in zip(prefix, img))
        else:
            prefix = tuple(a - b for a, b in zip(prefix, img))
            if g == j:
                out[prefix] = out.get(prefix, 0) - 1
    return LaurentPoly(out, rank=m)


def word_image(w: Word, target: RingHom) -> LaurentPoly:
    """The monomial that ``w`` maps to in Z[F]."""
    n = target.source_rank
    return LaurentPoly.monomial(target.image(w.exponent_sums(n)))


def alexander_matrix(G: GroupPresentation, psi: RingHom | None = None,
                     ab: AbelianStructure | None = None) -> list[list[LaurentPoly]]:
    """Fox Jacobian (relators x generators) under ``psi o to_free``.

    ``psi`` defaults to the identity of the free part of H_1.
    """
    ab = ab or abelianization(G)
    if psi is None:
        psi = RingHom.identity(ab.free_rank)
    if psi.source_rank != ab.free_rank:
        raise RankMismatch(f"psi has source rank {psi.source_rank}, H_1 free rank is {ab.free_rank}")
    target = psi.compose(ab.to_free)
    return [[fox_derivative(r, j, target) for j in range(G.n_generators)] for r in G.relators]
