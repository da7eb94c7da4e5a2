import random

from functor_homology.fplinalg import (FpMatrix, inverse, kernel_basis, rank,
                                       rref, solve)
from oracle import enumerate_fp_kernel


def test_kernel_identity_empty():
    assert kernel_basis(FpMatrix.identity(2, 3)) == []


def test_kernel_zero_row():
    basis = kernel_basis(FpMatrix(2, 1, 3, [[0, 0, 0]]))
    assert len(basis) == 3


def test_kernel_f2_example():
    A = FpMatrix(2, 2, 2, [[1, 1], [1, 1]])
    basis = kernel_basis(A)
    assert basis == [[1, 1]]
    # enumeration oracle: kernel = {(0,0), (1,1)}
    assert sorted(enumerate_fp_kernel(2, [[1, 1], [1, 1]])) == [[0, 0], [1, 1]]


def test_kernel_matches_enumeration_random():
    rng = random.Random(3)
    for _ in range(50):
        p = rng.choice((2, 3))
        m, n = rng.randint(1, 3), rng.randint(1, 3)
        data = [[rng.randint(0, p - 1) for _ in range(n)] for _ in range(m)]
        A = FpMatrix(p, m, n, data)
        found = kernel_basis(A)
        want = enumerate_fp_kernel(p, data)
        assert p ** len(found) == len(want)
        for v in found:
            assert A.mul_vec(v) == [0] * m


def test_solve_and_inverse():
    rng = random.Random(5)
    for _ in range(40):
        p = rng.choice((2, 3, 5))
        n = rng.randint(1, 3)
        data = [[rng.randint(0, p - 1) for _ in range(n)] for _ in range(n)]
        A = FpMatrix(p, n, n, data)
        x = [rng.randint(0, p - 1) for _ in range(n)]
        b = A.mul_vec(x)
        y = solve(A, b)
        assert y is not None and A.mul_vec(y) == b
        if rank(A) == n:
            Ainv = inverse(A)
            assert A.mul(Ainv) == FpMatrix.identity(p, n)


def test_rref_pivots_deterministic():
    A = FpMatrix(2, 2, 3, [[0, 1, 1], [1, 1, 0]])
    R1, piv1 = rref(A)
    R2, piv2 = rref(A)
    assert R1 == R2 and piv1 == piv2 == [0, 1]
