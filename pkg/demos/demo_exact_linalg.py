"""A tour of the exact linear algebra substrate.

Everything downstream (kernels, homology, spectral sequences) reduces to
Smith normal form over Z and row reduction over prime fields, computed
with arbitrary-precision integers so nothing ever overflows.
"""

from functor_homology.intlinalg import IntMatrix, kernel_basis, snf, solve
from functor_homology.fplinalg import FpMatrix
from functor_homology import fplinalg

print("== Smith normal form ==")
A = IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
res = snf(A)
print("A  =", A.data)
print("D  =", res.D.data)
print("check U*A*V == D:", res.U.mul(A).mul(res.V) == res.D)
print("invariant factors:", [d for d in res.diagonal() if d])

print()
print("== integer solving ==")
M = IntMatrix.from_rows([[1, 2], [3, 4]])
print("solve [[1,2],[3,4]] x = (1,1):", solve(M, [1, 1]))
print("solve 2x = 3 has no integer solution:",
      solve(IntMatrix.from_rows([[2]]), [3]))

print()
print("== integer kernels ==")
K = IntMatrix.from_rows([[2, -4, 6]])
print("kernel basis of [2,-4,6]:", kernel_basis(K))

print()
print("== prime fields ==")
B = FpMatrix(2, 2, 3, [[1, 1, 0], [0, 1, 1]])
print("kernel of a 2x3 matrix over F_2:", fplinalg.kernel_basis(B))
print("rank:", fplinalg.rank(B))
