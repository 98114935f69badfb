"""Smith normal form over Z with unimodular certificates.

Plain lists of Python ints throughout, so entries never overflow.
"""

from __future__ import annotations

from dataclasses import dataclass

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix, inner: int | None = None) -> Matrix:
    if inner is None:
        inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(a))]


def det(a: Matrix) -> int:
    """Integer determinant by fraction-free elimination."""
    n = len(a)
    m = [row[:] for row in a]
    sign, prev = 1, 1
    for k in range(n):
        p = next((i for i in range(k, n) if m[i][k]), None)
        if p is None:
            return 0
        if p != k:
            m[k], m[p] = m[p], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


@dataclass
class SmithForm:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` diagonal."""

    D: Matrix
    U: Matrix
    V: Matrix
    rows: int
    cols: int

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(self.rows, self.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    def check(self, a: Matrix) -> bool:
        prod = matmul(matmul(self.U, a, self.rows), self.V, self.cols) if self.rows and self.cols else []
        return (not self.rows or not self.cols or prod == self.D) and \
            abs(det(self.U)) == 1 and abs(det(self.V)) == 1


def smith_normal_form(a: Matrix, rows: int | None = None, cols: int | None = None) -> SmithForm:
    """Reduce by row/column operations, pivoting on the entry of least absolute value.

    The nonzero diagonal entries are positive and each divides the next.
    """
    m = rows if rows is not None else len(a)
    n = cols if cols is not None else (len(a[0]) if a else 0)
    A = [list(map(int, row)) for row in a]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row dst += k * row src
        A[dst] = [x + k * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        for row in A:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    for s in range(min(m, n)):
        while True:
            best = None
            for i in range(s, m):
                for j in range(s, n):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(s, best[0])
            swap_cols(s, best[1])
            p = A[s][s]
            dirty = False
            for i in range(s + 1, m):
                if A[i][s]:
                    add_row(i, s, -(A[i][s] // p))
                    dirty = dirty or A[i][s] != 0
            for j in range(s + 1, n):
                if A[s][j]:
                    add_col(j, s, -(A[s][j] // p))
                    dirty = dirty or A[s][j] != 0
            if dirty:
                continue
            # pivot must divide the remaining block
            bad = next(((i, j) for i in range(s + 1, m) for j in range(s + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(s, bad[0], 1)
        if s < m and s < n and A[s][s] < 0:
            A[s] = [-x for x in A[s]]
            U[s] = [-x for x in U[s]]
    return SmithForm(A, U, V, m, n)


def solve_integral(a: Matrix, b: list[int], rows: int | None = None, cols: int | None = None) -> list[int] | None:
    """An integer ``x`` with ``a @ x == b``, or None if there is none."""
    m = rows if rows is not None else len(a)
    n = cols if cols is not None else (len(a[0]) if a else 0)
    snf = smith_normal_form(a, m, n)
    c = [sum(snf.U[i][k] * b[k] for k in range(m)) for i in range(m)]
    y = [0] * n
    for i in range(m):
        d = snf.D[i][i] if i < n else 0
        if d == 0:
            if c[i]:
                return None
        else:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    return [sum(snf.V[j][k] * y[k] for k in range(n)) for j in range(n)]
