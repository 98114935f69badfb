import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from sutura.errors import IndexOutOfRange, ParseError
from sutura.laurent import LaurentPoly, RingHom, normalize, parse_laurent
from sutura.presentation import (GroupPresentation, Word, abelianization, alexander_matrix,
                                 fox_derivative, free_reduce, word_image)
from sutura.smith import det, matmul, smith_normal_form, solve_integral


def P(text, rank=1):
    return parse_laurent(text, rank)


def words(n_gens=4, max_len=12):
    letters = st.tuples(st.integers(0, n_gens - 1), st.sampled_from((1, -1)))
    return st.lists(letters, max_size=max_len).map(lambda ls: Word(tuple(ls)))


int_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


class TestWords:
    def test_parse_and_format(self):
        w = Word.parse("a b A B")
        assert w.letters == ((0, 1), (1, 1), (0, -1), (1, -1))
        assert w.format() == "a b A B"
        assert Word.parse("x1 x2^-1", ["x1", "x2"]).letters == ((0, 1), (1, -1))

    def test_free_reduction(self):
        assert Word.parse("a b B A c").letters == ((2, 1),)
        assert free_reduce([(0, 1), (0, -1)]) == ()

    def test_unknown_letter(self):
        with pytest.raises(ParseError):
            Word.parse("a q", ["a", "b"])

    @given(words(), words())
    def test_group_laws(self, u, v):
        assert (u * u.inverse()).letters == ()
        assert (u * v).inverse() == v.inverse() * u.inverse()

    def test_presentation_index_range(self):
        with pytest.raises(IndexOutOfRange):
            GroupPresentation(2, (Word(((3, 1),)),))


class TestSmith:
    @settings(max_examples=80, deadline=None)
    @given(int_matrices)
    def test_certificate_and_sympy(self, a):
        r, c = len(a), len(a[0])
        S = smith_normal_form(a, r, c)
        assert S.check(a)
        assert matmul(matmul(S.U, a), S.V) == S.D
        assert abs(det(S.U)) == 1 and abs(det(S.V)) == 1
        d = S.diagonal
        for x, y in zip(d, d[1:]):
            assert y == 0 or (x != 0 and y % x == 0)
        ref = sympy_snf(sympy.Matrix(a), domain=sympy.ZZ)
        ref_diag = [abs(int(ref[i, i])) for i in range(min(r, c))]
        assert d == ref_diag

    @settings(max_examples=60, deadline=None)
    @given(int_matrices, st.data())
    def test_solve_integral(self, a, data):
        r, c = len(a), len(a[0])
        x = data.draw(st.lists(st.integers(-5, 5), min_size=c, max_size=c))
        b = [sum(a[i][j] * x[j] for j in range(c)) for i in range(r)]
        sol = solve_integral(a, b, r, c)
        assert sol is not None
        assert [sum(a[i][j] * sol[j] for j in range(c)) for i in range(r)] == b

    def test_solve_integral_none(self):
        assert solve_integral([[2]], [1], 1, 1) is None
        assert solve_integral([[1], [1]], [1, 0], 2, 1) is None


TREFOIL = GroupPresentation.parse(["a", "b"], ["a b a B A B"])


class TestAbelianization:
    def test_examples(self):
        ab = abelianization(TREFOIL)
        assert (ab.free_rank, ab.torsion_divisors) == (1, [])
        assert abelianization(GroupPresentation(2, ())).free_rank == 2
        ab = abelianization(GroupPresentation.parse(["a"], ["a a"]))
        assert (ab.free_rank, ab.torsion_divisors) == (0, [2])

    def test_certificate_kept(self):
        G = GroupPresentation.parse(["a", "b", "c"], ["a a b b", "a b a b c c c c"])
        ab = abelianization(G)
        assert ab.smith.check(G.relator_matrix())
        assert ab.free_rank == 1 and ab.torsion_divisors == [2, 4]

    def test_to_free_kills_torsion(self):
        G = GroupPresentation.parse(["a", "b"], ["a a"])
        ab = abelianization(G)
        assert ab.to_free.image((1, 0)) == (0,)
        assert ab.to_free.image((0, 1)) in ((1,), (-1,))

    @settings(max_examples=40, deadline=None)
    @given(st.lists(words(3, 8), max_size=4), st.randoms(use_true_random=False))
    def test_order_independence_and_tietze(self, rels, rnd):
        G = GroupPresentation(3, tuple(rels))
        ab = abelianization(G)
        perm = list(range(3))
        rnd.shuffle(perm)
        shuffled = [Word(tuple((perm[g], e) for g, e in w.letters)) for w in rels]
        rnd.shuffle(shuffled)
        ab2 = abelianization(GroupPresentation(3, tuple(shuffled)))
        assert (ab.free_rank, ab.torsion_divisors) == (ab2.free_rank, ab2.torsion_divisors)
        if rels:
            c = Word(((rnd.randrange(3), 1),))
            extra = c * rels[0] * c.inverse()
            ab3 = abelianization(GroupPresentation(3, tuple(rels) + (extra,)))
            assert (ab.free_rank, ab.torsion_divisors) == (ab3.free_rank, ab3.torsion_divisors)


class TestFox:
    def test_basic_rules(self):
        psi = RingHom.identity(2)
        a, A = Word.parse("a"), Word.parse("A")
        assert fox_derivative(a, 0, psi) == LaurentPoly.one(2)
        assert fox_derivative(a, 1, psi).is_zero
        assert fox_derivative(A, 0, psi) == -LaurentPoly.monomial((-1, 0))

    def test_commutator(self):
        psi = RingHom.identity(2)
        w = Word.parse("a b A B")
        expected = 1 - LaurentPoly.monomial((0, 1))  # 1 - a b a^-1 = 1 - b after abelianizing
        assert fox_derivative(w, 0, psi) == expected

    def test_index_range(self):
        with pytest.raises(IndexOutOfRange):
            fox_derivative(Word.parse("a"), 5, RingHom.identity(1))

    @settings(max_examples=80, deadline=None)
    @given(words(), words(), st.integers(0, 3), st.lists(st.integers(-2, 2), min_size=8, max_size=8))
    def test_product_rule(self, u, v, j, m):
        psi = RingHom([m[:4], m[4:]])
        lhs = fox_derivative(u * v, j, psi)
        rhs = fox_derivative(u, j, psi) + word_image(u, psi) * fox_derivative(v, j, psi)
        assert lhs == rhs

    def test_trefoil_matrix(self):
        J = alexander_matrix(TREFOIL)
        assert len(J) == 1 and len(J[0]) == 2
        delta = normalize(P("t^2 - t + 1"))
        assert normalize(J[0][0]) == delta and normalize(J[0][1]) == delta
        assert J[0][0] == -J[0][1]

    def test_free_group_matrix(self):
        assert alexander_matrix(GroupPresentation(2, ())) == []

    @pytest.mark.parametrize("n", [1, 2, 5])
    def test_cyclic_trivial_psi(self, n):
        G = GroupPresentation.parse(["a"], [" ".join("a" * n)])
        J = alexander_matrix(G, RingHom.trivial(0))
        assert J == [[LaurentPoly.constant(n, 0)]]

    def test_fox_identity_example(self):
        # sum_j (dr/dx_j)(x_j - 1) = r - 1 for a relator of the trefoil group
        J = alexander_matrix(TREFOIL)
        ab = abelianization(TREFOIL)
        gens = [LaurentPoly.monomial(ab.to_free.image(e)) for e in ((1, 0), (0, 1))]
        total = sum((J[0][j] * (gens[j] - 1) for j in range(2)), LaurentPoly.zero(1))
        assert total.is_zero


def test_random_fox_identity_small():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(1, 4)
        w = Word(tuple((rng.randrange(n), rng.choice((1, -1))) for _ in range(rng.randint(0, 10))))
        m = rng.randint(1, 3)
        psi = RingHom([[rng.randint(-2, 2) for _ in range(n)] for _ in range(m)], n, m)
        gens = [LaurentPoly.monomial(psi.image(tuple(int(i == j) for i in range(n)))) for j in range(n)]
        lhs = sum((fox_derivative(w, j, psi) * (gens[j] - 1) for j in range(n)), LaurentPoly.zero(m))
        assert lhs == word_image(w, psi) - 1
