"""Fixed points of the transform and what iteration does to a random matrix.

Quasi-normal elements (in finite dimensions: the normal ones, including
singular normals that exercise the non-unitary polar isometry) are exactly
the fixed points for every lambda > 0.  Iterating the transform drives the
quasi-normality residual of a generic matrix toward zero.
"""

import numpy as np

from aluthgelab import aluthge, aluthge_orbit, is_quasinormal, quasinormal_residual
from aluthgelab.algebra import VNAlgebra
from aluthgelab import sampling

alg = VNAlgebra((4,))
rng = sampling.rng_for(7, "demo:orbit")

print("=== fixed points ===")
normal = sampling.random_normal(rng, alg, singular=True)
print("singular normal: quasi-normal?", is_quasinormal(normal))
for lam in (0.25, 0.5, 1.0):
    res = (aluthge(normal, lam) - normal).norm()
    print(f"  ||Delta_{lam}(a) - a|| = {res:.2e}")

generic = sampling.random_element(rng, alg)
print("generic matrix: quasi-normal?", is_quasinormal(generic))
print("  ||Delta_1/2(a) - a|| =", f"{(aluthge(generic, 0.5) - generic).norm():.3f}")

print()
print("=== orbit of a random 4x4 under Delta_1/2 ===")
orbit = aluthge_orbit(generic, 0.5, 50)
print(f"{'step':>4s}  {'quasi-normality residual':>24s}  {'step distance':>13s}")
for k in (0, 1, 2, 5, 10, 20, 50):
    dist = 0.0 if k == 0 else (orbit[k] - orbit[k - 1]).norm()
    print(f"{k:4d}  {quasinormal_residual(orbit[k]):24.3e}  {dist:13.3e}")
print("(the residual trend is observational; monotonicity is not asserted)")
