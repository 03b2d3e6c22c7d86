"""Build every preserver-map class and probe the four product hypotheses.

The hypotheses ask Phi(Delta(a . b)) = Delta(Phi(a) . Phi(b)) for one of
four products (plain, Jordan, with or without an adjoint on b).  Unitary
conjugations, their conjugate-linear variants and central splits pass all
four; the discriminator maps show where the classification is sharp.
"""

import numpy as np

from aluthgelab import (
    AbelianInverse,
    CentralSplit,
    ConjLinearConj,
    ExceptionalI2,
    ScalarMultiple,
    TransposeConj,
    UnitaryConj,
    check_bmn_commutation,
    check_hypothesis,
    extract_scalar_map,
)
from aluthgelab.algebra import VNAlgebra
from aluthgelab import sampling

SEED = 7
alg = VNAlgebra((2, 2))
rng = sampling.rng_for(SEED, "demo:maps")
v = sampling.random_unitary_elem(rng, alg)

print("=== isomorphisms pass all four hypotheses ===")
maps = {
    "UnitaryConj": UnitaryConj(v),
    "ConjLinearConj": ConjLinearConj(v),
    "CentralSplit": CentralSplit(alg.block_indicator(0), UnitaryConj(v), ConjLinearConj(v)),
}
for name, phi in maps.items():
    residuals = [
        check_hypothesis(phi, which, 0.5, SEED, n_trials=50).max_residual
        for which in ("h1", "h2", "h3", "h4")
    ]
    print(f"{name:16s} max residuals h1-h4: " + "  ".join(f"{r:.1e}" for r in residuals))

print()
print("=== scalar maps: how Phi acts on multiples of the identity ===")
for name in ("UnitaryConj", "ConjLinearConj"):
    print(f"{name}: h is the {extract_scalar_map(maps[name]).classification}")

print()
print("=== discriminators ===")
alg2 = VNAlgebra((2,))
v2 = sampling.random_unitary_elem(rng, alg2)

anti = TransposeConj(v2)
print("TransposeConj (anti-automorphism) h1 residual:",
      f"{check_hypothesis(anti, 'h1', 0.5, SEED, n_trials=50).max_residual:.3f}",
      "-> fails, transposes do not intertwine the transform")

exc = ExceptionalI2(1.0, v2)
print("ExceptionalI2 linear commutation residual:",
      f"{check_bmn_commutation(exc, 0.5, SEED, n_trials=50).max_residual:.1e}",
      "(passes as a linear preserver)")
print("ExceptionalI2 h3 residual:",
      f"{check_hypothesis(exc, 'h3', 0.5, SEED, n_trials=50).max_residual:.3f}",
      "-> fails h3: it maps 1 to -1")

scaled = ScalarMultiple(2j, UnitaryConj(v2))
print("ScalarMultiple(2i) linear commutation residual:",
      f"{check_bmn_commutation(scaled, 0.5, SEED, n_trials=50).max_residual:.1e}",
      "; h3 residual:",
      f"{check_hypothesis(scaled, 'h3', 0.5, SEED, n_trials=50).max_residual:.3f}")

print()
print("=== why abelian summands must be excluded ===")
ab = VNAlgebra((1,))
inv = AbelianInverse(ab)
print("z -> 1/z h3 residual on C:",
      f"{check_hypothesis(inv, 'h3', 0.5, SEED, n_trials=50).max_residual:.1e}")
one = ab.identity()
print("but Phi(1 + 1) =", complex(inv.apply(one + one).blocks[0][0, 0]),
      "while Phi(1) + Phi(1) =", complex((inv.apply(one) + inv.apply(one)).blocks[0][0, 0]),
      "-> not additive")
