import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import random_poly, random_unit, sympy_det
from sutura.complexes import PairComplex, h0_pair, module_order, qf_homology_ranks, specialize
from sutura.errors import NotConnected
from sutura.laurent import LaurentPoly, RingHom, normalize, parse_laurent
from sutura import polymatrix


def P(text, rank=1):
    return parse_laurent(text, rank)


def M(rows, rank=1):
    return [[P(e, rank) for e in row] for row in rows]


def random_matrix(rng, s, r, rank=1, **kw):
    return [[random_poly(rng, rank, **kw) for _ in range(r)] for _ in range(s)]


def row_op(A, rng):
    """A unimodular row operation over Z[t^+-1]: add a multiple, swap, or scale by a unit."""
    A = [list(r) for r in A]
    s = len(A)
    kind = rng.randrange(3)
    if kind == 0 and s > 1:
        i, j = rng.sample(range(s), 2)
        m = random_poly(rng, A[0][0].rank, max_terms=2, coeff=3)
        A[i] = [a + m * b for a, b in zip(A[i], A[j])]
    elif kind == 1 and s > 1:
        i, j = rng.sample(range(s), 2)
        A[i], A[j] = A[j], A[i]
    else:
        i = rng.randrange(s)
        u = random_unit(rng, A[0][0].rank)
        A[i] = [u * a for a in A[i]]
    return A


def transpose(A):
    return [list(c) for c in zip(*A)]


def scramble(A, rng, steps=4):
    for _ in range(steps):
        A = row_op(A, rng)
        A = transpose(row_op(transpose(A), rng))
    return A


class TestPairComplex:
    def test_stabilises_with_zero_columns(self):
        C = PairComplex(M([["t - 1"], ["1"]]))
        assert (C.s, C.r, C.n_cells) == (2, 2, 1)
        assert C.boundary[0][1].is_zero

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            PairComplex([])

    def test_specialize_examples(self):
        A = M([["x1 - 1", "x1 - x2"]], 2)
        assert specialize(A, RingHom.identity(2)).boundary[0] == tuple(A[0])
        C = specialize(A, RingHom.trivial(2))
        assert all(p.is_zero for p in C.boundary[0])
        C = specialize(A, RingHom([[1, 1]]))
        assert C.boundary[0][1].is_zero and C.boundary[0][0] == P("t - 1")


class TestModuleOrder:
    def test_examples(self):
        p, q = P("t^2 + 3"), P("2*t - 1")
        assert module_order(PairComplex([[p]])) == normalize(p)
        z = LaurentPoly.zero(1)
        assert module_order(PairComplex([[p, z], [z, q]])) == normalize(p * q)
        assert module_order(PairComplex(M([["t - 1", "0"]]))) == normalize(P("t - 1"))

    def test_zero_when_all_minors_vanish(self):
        assert module_order(PairComplex(M([["t", "t^2"], ["1", "t"]]))).is_zero

    def test_gcd_of_minors(self):
        # minors: (t-1)(t+1), (t-1)*2, 0 -> gcd t - 1
        C = PairComplex(M([["t - 1", "0", "0"], ["0", "t + 1", "2"]]))
        assert module_order(C) == normalize(P("t - 1"))

    def test_square_is_determinant(self):
        rng = random.Random(3)
        for _ in range(20):
            n = rng.randint(1, 3)
            A = random_matrix(rng, n, n)
            if all(p.is_zero for row in A for p in row):
                continue
            assert module_order(PairComplex(A, 1)) == sympy_det(A)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 10 ** 6))
    def test_invariance(self, seed):
        rng = random.Random(seed)
        A = random_matrix(rng, 2, 3)
        base = module_order(PairComplex(A, 1))
        assert module_order(PairComplex(scramble(A, rng, 3), 1)) == base
        assert module_order(PairComplex(A, 1).with_zero_columns(2)) == base

    def test_bivariate_order(self):
        C = PairComplex(M([["x1 - 1", "x2 - 1"]], 2))
        assert module_order(C) == LaurentPoly.one(2)


class TestRanks:
    def test_examples(self):
        assert qf_homology_ranks(PairComplex(M([["t - 1"]]))).coker == 0
        assert qf_homology_ranks(PairComplex(M([["0"]]))).coker == 1
        r = qf_homology_ranks(PairComplex(M([["1", "0"], ["0", "1"]])))
        assert (r.rank, r.coker, r.ker) == (2, 0, 0)

    def test_kernel_counts_original_cells(self):
        r = qf_homology_ranks(PairComplex(M([["t", "t^2", "1"]])))
        assert (r.rank, r.coker, r.ker) == (1, 0, 2)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10 ** 6))
    def test_rank_matches_sympy(self, seed):
        import sympy
        from oracles import to_sympy
        rng = random.Random(seed)
        s, r = rng.randint(1, 3), rng.randint(1, 4)
        A = random_matrix(rng, s, r, max_terms=2)
        ref = sympy.Matrix([[to_sympy(p) for p in row] for row in A]).rank(simplify=True)
        assert polymatrix.rank(A, 1, r) == ref


class TestH0:
    def test_truth_table(self):
        assert h0_pair(True, True, True) == 1
        assert h0_pair(True, True, False) == 0
        assert h0_pair(True, False, True) == 0
        assert h0_pair(True, False, False) == 0

    def test_needs_connected(self):
        with pytest.raises(NotConnected):
            h0_pair(False, True, True)
