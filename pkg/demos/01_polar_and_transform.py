"""Polar decompositions and the lambda-Aluthge transform, step by step.

Walks through the partial-isometry polar convention on a singular matrix,
the worked rank-one example, and the lambda = 0 / lambda = 1 conventions.
"""

import numpy as np

from aluthgelab import aluthge_matrix, polar_decompose, range_projection, rank_one_aluthge

np.set_printoptions(precision=4, suppress=True)

print("=== polar decomposition with the partial-isometry convention ===")
a = np.array([[1.0, 1.0], [0.0, 0.0]], dtype=complex)
parts = polar_decompose(a)
print("a =\n", a.real)
print("u =\n", parts.u)
print("|a| =\n", parts.modulus)
print("u*u (the range projection of |a|, NOT the identity):\n",
      (parts.u.conj().T @ parts.u).real)
print("range projection of |a|:\n", range_projection(parts.modulus).real)
print("reconstruction error:", np.linalg.norm(parts.u @ parts.modulus - a))

print()
print("=== the transform on the worked example ===")
# a = x (.|y) with x = (1,0), y = (1,1); the closed form gives
# (<x|y>/||y||^2) y(.|y) = 1/2 * [[1,1],[1,1]] for every lambda > 0
for lam in (0.25, 0.5, 0.75, 1.0):
    print(f"Delta_{lam}(a) =\n", aluthge_matrix(a, lam).real)
print("closed rank-one form:\n", rank_one_aluthge([1, 0], [1, 1], 0.5).real)

print()
print("=== edge conventions ===")
print("lambda = 0 is the identity transform (bit-exact):")
print(aluthge_matrix(a, 0.0).real)
nil = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
print("a square-zero nilpotent is annihilated for every lambda > 0:")
print("||Delta_1/2([[0,1],[0,0]])|| =", np.linalg.norm(aluthge_matrix(nil, 0.5)))
