"""Exact integer matrix arithmetic: Smith normal form, solving, kernels.

All entries are Python ints (arbitrary precision).  Matrices are dense,
row-major lists of lists.  Everything here is pure and total; callers own
shape checking unless a function documents otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass


class IntMatrix:
    """Immutable-by-convention dense integer matrix."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows, cols, data):
        assert len(data) == rows and all(len(r) == cols for r in data)
        self.rows = rows
        self.cols = cols
        self.data = [list(r) for r in data]

    @classmethod
    def from_rows(cls, data):
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return cls(rows, cols, data)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols}, {self.data})"

    def transpose(self):
        return IntMatrix(
            self.cols, self.rows,
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def mul(self, other):
        assert self.cols == other.rows, "shape mismatch"
        a, b = self.data, other.data
        out = [[0] * other.cols for _ in range(self.rows)]
        for i in range(self.rows):
            ai, oi = a[i], out[i]
            for k in range(self.cols):
                x = ai[k]
                if x:
                    bk = b[k]
                    for j in range(other.cols):
                        oi[j] += x * bk[j]
        return IntMatrix(self.rows, other.cols, out)

    def mul_vec(self, v):
        assert len(v) == self.cols, "shape mismatch"
        return [sum(r[j] * v[j] for j in range(self.cols)) for r in self.data]

    def col(self, j):
        return [r[j] for r in self.data]

    def is_zero(self):
        return all(x == 0 for r in self.data for x in r)


def hstack(mats):
    """Concatenate matrices left to right (equal row counts)."""
    mats = [m for m in mats]
    rows = mats[0].rows
    assert all(m.rows == rows for m in mats)
    data = [[] for _ in range(rows)]
    for m in mats:
        for i in range(rows):
            data[i].extend(m.data[i])
    return IntMatrix(rows, sum(m.cols for m in mats), data)


def from_columns(cols, rows):
    """Matrix with the given columns (each a length-`rows` vector)."""
    return IntMatrix(rows, len(cols), [[c[i] for c in cols] for i in range(rows)])


@dataclass
class SnfResult:
    """U*A*V = D with U, V unimodular and D in Smith normal form.

    Nonzero diagonal entries of D are positive, come first, and divide
    each other in order.  det(U) and det(V) are +-1 (also recorded as
    det_u/det_v, tracked during the reduction).
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    det_u: int
    det_v: int

    @property
    def rank(self):
        n = min(self.D.rows, self.D.cols)
        return sum(1 for i in range(n) if self.D.data[i][i] != 0)

    def diagonal(self):
        n = min(self.D.rows, self.D.cols)
        return [self.D.data[i][i] for i in range(n)]


def snf(A: IntMatrix) -> SnfResult:
    """Smith normal form by elementary row/column operations.

    Pivot selection: smallest nonzero absolute value, topmost then
    leftmost on ties, so the output is deterministic.
    """
    m, n = A.rows, A.cols
    D = [list(r) for r in A.data]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    det_u = 1
    det_v = 1

    def swap_rows(i, j):
        nonlocal det_u
        if i != j:
            D[i], D[j] = D[j], D[i]
            U[i], U[j] = U[j], U[i]
            det_u = -det_u

    def swap_cols(i, j):
        nonlocal det_v
        if i != j:
            for r in D:
                r[i], r[j] = r[j], r[i]
            for r in V:
                r[i], r[j] = r[j], r[i]
            det_v = -det_v

    def add_row(src, dst, q):
        # row[dst] += q * row[src]
        Ds, Dd = D[src], D[dst]
        for j in range(n):
            Dd[j] += q * Ds[j]
        Us, Ud = U[src], U[dst]
        for j in range(m):
            Ud[j] += q * Us[j]

    def add_col(src, dst, q):
        for r in D:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]

    def negate_row(i):
        nonlocal det_u
        D[i] = [-x for x in D[i]]
        U[i] = [-x for x in U[i]]
        det_u = -det_u

    k = 0
    while k < m and k < n:
        # locate pivot in the trailing submatrix
        piv = None
        for i in range(k, m):
            Di = D[i]
            for j in range(k, n):
                x = Di[j]
                if x != 0 and (piv is None or abs(x) < piv[0]):
                    piv = (abs(x), i, j)
        if piv is None:
            break
        swap_rows(k, piv[1])
        swap_cols(k, piv[2])

        while True:
            # clear column k below the pivot, then row k right of it;
            # restart whenever a remainder shrinks the pivot
            restart = False
            for i in range(k + 1, m):
                a = D[i][k]
                if a:
                    q = a // D[k][k]
                    add_row(k, i, -q)
                    if D[i][k]:
                        swap_rows(k, i)
                        restart = True
                        break
            if restart:
                continue
            for j in range(k + 1, n):
                a = D[k][j]
                if a:
                    q = a // D[k][k]
                    add_col(k, j, -q)
                    if D[k][j]:
                        swap_cols(k, j)
                        restart = True
                        break
            if restart:
                continue
            # pivot must divide the rest of the submatrix
            d = D[k][k]
            bad = None
            for i in range(k + 1, m):
                Di = D[i]
                for j in range(k + 1, n):
                    if Di[j] % d:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, k, 1)
        if D[k][k] < 0:
            negate_row(k)
        k += 1

    return SnfResult(IntMatrix(m, m, U), IntMatrix(m, n, D), IntMatrix(n, n, V),
                     det_u, det_v)


def kernel_basis(A: IntMatrix) -> list[list[int]]:
    """Basis (list of column vectors) of { x : A*x = 0 } over the integers.

    The returned vectors generate the full kernel lattice, not just a
    finite-index sublattice.
    """
    res = snf(A)
    r = res.rank
    return [res.V.col(j) for j in range(r, A.cols)]


def solve_snf(res: SnfResult, b: list[int]):
    """Solve A*x = b given a precomputed SnfResult for A."""
    c = res.U.mul_vec(b)
    r = res.rank
    cols = res.V.rows
    y = [0] * cols
    for i in range(min(res.D.rows, cols)):
        d = res.D.data[i][i]
        if d:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    for i in range(r, res.D.rows):
        if c[i] != 0:
            return None
    return res.V.mul_vec(y)


def solve(A: IntMatrix, b: list[int]):
    """One integer solution of A*x = b, or None when none exists."""
    if len(b) != A.rows:
        raise ValueError("dimension mismatch: len(b) != rows(A)")
    return solve_snf(snf(A), b)


def inverse_unimodular(M: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular integer matrix."""
    n = M.rows
    assert n == M.cols
    res = snf(M)
    cols = []
    for j in range(n):
        e = [1 if i == j else 0 for i in range(n)]
        x = solve_snf(res, e)
        assert x is not None, "matrix is not invertible over the integers"
        cols.append(x)
    return from_columns(cols, n)


def det_sign_of_unimodular(M: IntMatrix) -> int:
    """Determinant of a matrix known to be unimodular (+1 or -1).

    Fraction-free Gaussian elimination; used by tests to cross-check the
    incrementally tracked signs.
    """
    n = M.rows
    assert n == M.cols
    a = [list(r) for r in M.data]
    sign = 1
    prev = 1
    for k in range(n):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    d = sign * prev
    assert d in (1, -1), "matrix was not unimodular"
    return d
