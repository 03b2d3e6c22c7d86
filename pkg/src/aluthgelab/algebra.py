"""Finite-dimensional von Neumann algebra model: direct sums of matrix blocks.

An algebra is described by its block dimensions (n_1, ..., n_K); an element
carries one square complex matrix per block.  All operations are blockwise
and pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import DEFAULT_TOL, NotHermitian, TolerancePolicy, as_matrix, frob, herm_eig


class AlgebraMismatch(ValueError):
    pass


class NotProjection(ValueError):
    pass


class NotPartialIsometry(ValueError):
    pass


class BadIndex(IndexError):
    pass


@dataclass(frozen=True)
class VNAlgebra:
    """Direct sum of full matrix blocks M_{n_1} + ... + M_{n_K}."""

    block_dims: tuple

    def __post_init__(self):
        dims = tuple(int(n) for n in self.block_dims)
        if len(dims) < 1 or any(n < 1 for n in dims):
            raise ValueError(f"block dims must be a nonempty tuple of positive ints, got {self.block_dims!r}")
        object.__setattr__(self, "block_dims", dims)

    def has_abelian_summand(self) -> bool:
        return any(n == 1 for n in self.block_dims)

    def element(self, blocks) -> "AlgElem":
        mats = tuple(as_matrix(b) for b in blocks)
        if len(mats) != len(self.block_dims):
            raise AlgebraMismatch(f"expected {len(self.block_dims)} blocks, got {len(mats)}")
        for mat, n in zip(mats, self.block_dims):
            if mat.shape != (n, n):
                raise AlgebraMismatch(f"block of shape {mat.shape} does not match dimension {n}")
        return AlgElem(self, mats)

    def zero(self) -> "AlgElem":
        return self.element([np.zeros((n, n)) for n in self.block_dims])

    def identity(self) -> "AlgElem":
        return self.element([np.eye(n) for n in self.block_dims])

    def scalar(self, alpha: complex) -> "AlgElem":
        return self.element([alpha * np.eye(n) for n in self.block_dims])

    def block_indicator(self, k: int) -> "AlgElem":
        """Central projection supported on block k."""
        if not 0 <= k < len(self.block_dims):
            raise BadIndex(f"block index {k} out of range")
        return self.element(
            [np.eye(n) if i == k else np.zeros((n, n)) for i, n in enumerate(self.block_dims)]
        )

    def embed(self, k: int, mat) -> "AlgElem":
        """Element equal to `mat` in block k and zero elsewhere."""
        if not 0 <= k < len(self.block_dims):
            raise BadIndex(f"block index {k} out of range")
        return self.element(
            [mat if i == k else np.zeros((n, n)) for i, n in enumerate(self.block_dims)]
        )


@dataclass(frozen=True)
class AlgElem:
    algebra: VNAlgebra
    blocks: tuple = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(np.asarray(b, dtype=np.complex128) for b in self.blocks))

    # --- arithmetic -------------------------------------------------------
    def _check(self, other: "AlgElem") -> None:
        if self.algebra.block_dims != other.algebra.block_dims:
            raise AlgebraMismatch(
                f"algebras differ: {self.algebra.block_dims} vs {other.algebra.block_dims}"
            )

    def __add__(self, other):
        self._check(other)
        return AlgElem(self.algebra, tuple(x + y for x, y in zip(self.blocks, other.blocks)))

    def __sub__(self, other):
        self._check(other)
        return AlgElem(self.algebra, tuple(x - y for x, y in zip(self.blocks, other.blocks)))

    def __neg__(self):
        return AlgElem(self.algebra, tuple(-x for x in self.blocks))

    def __mul__(self, alpha):
        return AlgElem(self.algebra, tuple(complex(alpha) * x for x in self.blocks))

    __rmul__ = __mul__

    def __matmul__(self, other):
        self._check(other)
        return AlgElem(self.algebra, tuple(x @ y for x, y in zip(self.blocks, other.blocks)))

    def adjoint(self) -> "AlgElem":
        return AlgElem(self.algebra, tuple(x.conj().T for x in self.blocks))

    def conj(self) -> "AlgElem":
        return AlgElem(self.algebra, tuple(x.conj() for x in self.blocks))

    def transpose(self) -> "AlgElem":
        return AlgElem(self.algebra, tuple(x.T for x in self.blocks))

    def norm(self) -> float:
        return float(np.sqrt(sum(frob(b) ** 2 for b in self.blocks)))

    def trace(self) -> complex:
        return complex(sum(np.trace(b) for b in self.blocks))


# spec-level operation names -----------------------------------------------

def add(a: AlgElem, b: AlgElem) -> AlgElem:
    return a + b


def mul(a: AlgElem, b: AlgElem) -> AlgElem:
    return a @ b


def scale(alpha: complex, a: AlgElem) -> AlgElem:
    return alpha * a


def adjoint(a: AlgElem) -> AlgElem:
    return a.adjoint()


def jordan(a: AlgElem, b: AlgElem) -> AlgElem:
    """Jordan product (ab + ba) / 2."""
    return 0.5 * (a @ b + b @ a)


def triple(a: AlgElem, b: AlgElem, c: AlgElem) -> AlgElem:
    """Triple product (a b* c + c b* a) / 2."""
    bs = b.adjoint()
    return 0.5 * (a @ bs @ c + c @ bs @ a)


def elem_eq(a: AlgElem, b: AlgElem, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    a._check(b)
    return (a - b).norm() <= tol.eq_tol * max(1.0, a.norm(), b.norm())


def elem_residual(a: AlgElem, b: AlgElem) -> float:
    return (a - b).norm() / max(1.0, a.norm(), b.norm())


def is_hermitian(a: AlgElem, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    return elem_eq(a, a.adjoint(), tol)


def hermitian_part(a: AlgElem):
    """Split a = x + i y with x, y Hermitian."""
    x = 0.5 * (a + a.adjoint())
    y = (-0.5j) * (a - a.adjoint())
    return x, y


# projections --------------------------------------------------------------

def is_projection(p: AlgElem, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    return elem_eq(p, p.adjoint(), tol) and elem_eq(p @ p, p, tol)


def _require_projections(tol, *ps):
    for p in ps:
        if not is_projection(p, tol):
            raise NotProjection("argument is not a projection within eq_tol")


def proj_leq(p: AlgElem, q: AlgElem, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    """p <= q in the projection order, i.e. pq = p."""
    _require_projections(tol, p, q)
    return elem_eq(p @ q, p, tol)


def proj_orthogonal(p: AlgElem, q: AlgElem, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    _require_projections(tol, p, q)
    return (p @ q).norm() <= tol.eq_tol * max(1.0, p.norm(), q.norm())


def block_ranks(p: AlgElem, tol: TolerancePolicy = DEFAULT_TOL):
    """Per-block rank of a projection, read off its (0/1) eigenvalues."""
    ranks = []
    for blk in p.blocks:
        w, _ = herm_eig(blk, tol)
        ranks.append(int(np.sum(w > 0.5)))
    return tuple(ranks)


def is_minimal_projection(p: AlgElem, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    """Rank one inside exactly one block, zero elsewhere (pAp = C p)."""
    if not is_projection(p, tol):
        return False
    return sorted(block_ranks(p, tol)) == [0] * (len(p.blocks) - 1) + [1]


# partial isometries -------------------------------------------------------

def is_partial_isometry(e: AlgElem, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    return elem_eq(e @ e.adjoint() @ e, e, tol)


def _require_partial_isometries(tol, *es):
    for e in es:
        if not is_partial_isometry(e, tol):
            raise NotPartialIsometry("argument is not a partial isometry within eq_tol")


def pi_orthogonal(e: AlgElem, v: AlgElem, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    """Element orthogonality e perp v: e v* = v* e = 0."""
    _require_partial_isometries(tol, e, v)
    s = tol.eq_tol * max(1.0, e.norm() * v.norm())
    return (e @ v.adjoint()).norm() <= s and (v.adjoint() @ e).norm() <= s


def pi_leq(e: AlgElem, v: AlgElem, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    """e <= v iff v - e is a partial isometry orthogonal to e.

    The equivalent characterization ee* <= vv* and e*e <= v*v is evaluated
    as a cross-validation; a disagreement raises RuntimeError.
    """
    _require_partial_isometries(tol, e, v)
    d = v - e
    by_def = False
    if is_partial_isometry(d, tol):
        s = tol.eq_tol * max(1.0, e.norm() * d.norm())
        by_def = (d @ e.adjoint()).norm() <= s and (e.adjoint() @ d).norm() <= s
    left = elem_eq((e @ e.adjoint()) @ (v @ v.adjoint()), e @ e.adjoint(), tol)
    right = elem_eq((e.adjoint() @ e) @ (v.adjoint() @ v), e.adjoint() @ e, tol)
    by_char = left and right
    if by_def != by_char:
        raise RuntimeError(
            f"partial-isometry order check disagrees: definition={by_def}, characterization={by_char}"
        )
    return by_def


# matrix units and the center ----------------------------------------------

@dataclass(frozen=True)
class MatrixUnitSystem:
    block_index: int
    units: tuple  # n x n grid of AlgElem

    def unit(self, i: int, j: int) -> AlgElem:
        return self.units[i][j]


def matrix_units(alg: VNAlgebra, block_index: int) -> MatrixUnitSystem:
    """Standard matrix units E_ij embedded in the chosen block.

    They satisfy u_ij* = u_ji, u_ij u_kl = delta_jk u_il and
    sum_i u_ii = block identity, all exactly (integer entries).
    """
    if not 0 <= block_index < len(alg.block_dims):
        raise BadIndex(f"block index {block_index} out of range")
    n = alg.block_dims[block_index]
    grid = []
    for i in range(n):
        row = []
        for j in range(n):
            e = np.zeros((n, n))
            e[i, j] = 1.0
            row.append(alg.embed(block_index, e))
        grid.append(tuple(row))
    return MatrixUnitSystem(block_index=block_index, units=tuple(grid))


def center_basis(alg: VNAlgebra):
    """The canonical block-indicator family spanning the center."""
    return [alg.block_indicator(k) for k in range(len(alg.block_dims))]


def is_central(a: AlgElem, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    """True iff every block is a scalar multiple of its identity."""
    candidate = a.algebra.element(
        [(np.trace(blk) / n) * np.eye(n) for blk, n in zip(a.blocks, a.algebra.block_dims)]
    )
    return elem_eq(a, candidate, tol)


def operator_commute(
    a: AlgElem,
    b: AlgElem,
    tol: TolerancePolicy = DEFAULT_TOL,
    cross_check_rng=None,
    n_samples: int = 20,
) -> bool:
    """Operator commutation of Hermitian a, b, decided as plain commutation.

    When a generator is supplied, Jordan-operator commutation
    (a o x) o b = a o (x o b) is sampled as a cross-validation of the
    equivalence with ordinary commutation; disagreement raises RuntimeError.
    """
    if not is_hermitian(a, tol) or not is_hermitian(b, tol):
        raise NotHermitian("operator_commute requires Hermitian inputs")
    s = max(1.0, a.norm() * b.norm())
    commute = (a @ b - b @ a).norm() <= tol.eq_tol * s
    if cross_check_rng is not None:
        assoc = True
        for _ in range(n_samples):
            x = _random_element(cross_check_rng, a.algebra)
            lhs = jordan(jordan(a, x), b)
            rhs = jordan(a, jordan(x, b))
            if (lhs - rhs).norm() > tol.eq_tol * max(1.0, a.norm() * b.norm() * x.norm()):
                assoc = False
                break
        if assoc != commute:
            raise RuntimeError(
                f"operator-commutation cross-check disagrees: commute={commute}, jordan-assoc={assoc}"
            )
    return commute


def _random_element(rng, alg: VNAlgebra) -> AlgElem:
    # local import would be circular; a plain gaussian element suffices here
    blocks = [
        (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
        for n in alg.block_dims
    ]
    return alg.element(blocks)
