"""The lambda-Aluthge transform and the lemma checks built around it."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import AlgElem, elem_eq, elem_residual, is_projection, NotProjection
from .linalg import (
    DEFAULT_TOL,
    TolerancePolicy,
    as_matrix,
    frob,
    svd,
)


class ZeroVector(ValueError):
    pass


def validate_lambda(lam: float) -> float:
    lam = float(lam)
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must lie in [0, 1], got {lam!r}")
    return lam


def aluthge_matrix(a, lam: float, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """|a|^lam u |a|^(1-lam) for a single square matrix, a = u |a|."""
    lam = validate_lambda(lam)
    m = as_matrix(a)
    rows, cols = m.shape
    if rows != cols:
        raise ValueError(f"the transform needs a square matrix, got {rows}x{cols}")
    if lam == 0.0:
        return m.copy()
    # one SVD suffices: |a|^t = v s^t v*, u = U_keep V_keep*, so
    # Delta = (v s^lam v*) u (v s^(1-lam) v*)   with 0^t := 0 throughout
    uf, s, v = svd(m, tol)
    keep = s > 0.0
    u = uf[:, keep] @ v[:, keep].conj().T
    left = (v * np.where(keep, s**lam, 0.0)) @ v.conj().T
    right = (v * np.where(keep, s ** (1.0 - lam), 0.0)) @ v.conj().T
    return left @ u @ right


def aluthge(a: AlgElem, lam: float, tol: TolerancePolicy = DEFAULT_TOL) -> AlgElem:
    """Blockwise lambda-Aluthge transform; lam = 0 returns the input exactly."""
    lam = validate_lambda(lam)
    if lam == 0.0:
        return AlgElem(a.algebra, a.blocks)
    return a.algebra.element([aluthge_matrix(blk, lam, tol) for blk in a.blocks])


def rank_one(x, y) -> np.ndarray:
    """The operator x (.|y), i.e. z -> <z|y> x, as a matrix x y*.

    Inner products are linear in the first argument throughout.
    """
    xv = np.asarray(x, dtype=np.complex128).reshape(-1, 1)
    yv = np.asarray(y, dtype=np.complex128).reshape(-1, 1)
    return xv @ yv.conj().T


def rank_one_aluthge(x, y, lam: float) -> np.ndarray:
    """Closed form of the transform on a rank-one operator.

    Delta_lam(x (.|y)) = (<x|y> / ||y||^2) * y (.|y), independent of lam > 0.
    """
    validate_lambda(lam)
    xv = np.asarray(x, dtype=np.complex128).ravel()
    yv = np.asarray(y, dtype=np.complex128).ravel()
    ynorm2 = float(np.vdot(yv, yv).real)
    if ynorm2 == 0.0:
        raise ZeroVector("y must be nonzero")
    coef = np.vdot(yv, xv) / ynorm2  # <x|y>, linear in the first argument
    return coef * rank_one(yv, yv)


def quasinormal_residual(a: AlgElem, tol: TolerancePolicy = DEFAULT_TOL) -> float:
    """|| a(a*a) - (a*a)a || / max(1, ||a||^3)."""
    g = a.adjoint() @ a
    return (a @ g - g @ a).norm() / max(1.0, a.norm() ** 3)


def is_quasinormal(a: AlgElem, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    return quasinormal_residual(a, tol) <= tol.eq_tol


@dataclass(frozen=True)
class Verdict:
    """Outcome of one lemma evaluation on concrete inputs."""

    passed: bool
    vacuous: bool = False
    residuals: dict = field(default_factory=dict)


def check_fixed_point_lemma(a: AlgElem, lam: float, tol: TolerancePolicy = DEFAULT_TOL) -> Verdict:
    """Quasi-normality must coincide with being a fixed point of Delta_lam (lam > 0)."""
    lam = validate_lambda(lam)
    if lam == 0.0:
        raise ValueError("the fixed-point equivalence requires lambda > 0")
    qn = is_quasinormal(a, tol)
    ta = aluthge(a, lam, tol)
    fixed_res = (ta - a).norm() / max(1.0, a.norm())
    fixed = fixed_res <= tol.eq_tol
    return Verdict(
        passed=(qn == fixed),
        residuals={
            "quasinormal_residual": quasinormal_residual(a, tol),
            "fixed_point_residual": fixed_res,
        },
    )


def check_ap_lemma(a: AlgElem, p: AlgElem, lam: float, tol: TolerancePolicy = DEFAULT_TOL) -> Verdict:
    """Delta_lam(a p) = a iff (a = pa = ap and a quasi-normal), lam > 0."""
    lam = validate_lambda(lam)
    if lam == 0.0:
        raise ValueError("the lemma requires lambda > 0")
    if not is_projection(p, tol):
        raise NotProjection("p must be a projection")
    lhs_res = elem_residual(aluthge(a @ p, lam, tol), a)
    lhs = lhs_res <= tol.eq_tol
    commutes = elem_eq(p @ a, a, tol) and elem_eq(a @ p, a, tol)
    rhs = commutes and is_quasinormal(a, tol)
    return Verdict(
        passed=(lhs == rhs),
        residuals={
            "transform_residual": lhs_res,
            "pa_residual": elem_residual(p @ a, a),
            "ap_residual": elem_residual(a @ p, a),
            "quasinormal_residual": quasinormal_residual(a, tol),
        },
    )


def check_identity_lemma(a: AlgElem, lam: float, tol: TolerancePolicy = DEFAULT_TOL) -> Verdict:
    """Delta_lam(a) = 1 must force a = 1 (sampling falsification, not a proof)."""
    lam = validate_lambda(lam)
    one = a.algebra.identity()
    fixed_to_one = elem_eq(aluthge(a, lam, tol), one, tol)
    is_one = elem_eq(a, one, tol)
    return Verdict(
        passed=(not fixed_to_one) or is_one,
        vacuous=not fixed_to_one,
        residuals={
            "transform_vs_one": elem_residual(aluthge(a, lam, tol), one),
            "a_vs_one": elem_residual(a, one),
        },
    )


def check_qnormal_adjoint_lemma(a: AlgElem, lam: float, tol: TolerancePolicy = DEFAULT_TOL) -> Verdict:
    """For quasi-normal a: Delta_lam(a*) = a implies a* = a."""
    lam = validate_lambda(lam)
    if not is_quasinormal(a, tol):
        raise ValueError("the lemma requires a quasi-normal input")
    premise_res = elem_residual(aluthge(a.adjoint(), lam, tol), a)
    if premise_res > tol.eq_tol:
        return Verdict(passed=True, vacuous=True, residuals={"premise_residual": premise_res})
    herm_res = elem_residual(a.adjoint(), a)
    return Verdict(
        passed=herm_res <= 10.0 * tol.eq_tol,
        residuals={"premise_residual": premise_res, "hermitian_residual": herm_res},
    )


def aluthge_orbit(a: AlgElem, lam: float, steps: int, tol: TolerancePolicy = DEFAULT_TOL):
    """[a, Delta(a), Delta^2(a), ...] with `steps` applications."""
    if steps < 0:
        raise ValueError("steps must be >= 0")
    orbit = [a]
    for _ in range(steps):
        orbit.append(aluthge(orbit[-1], lam, tol))
    return orbit


def adjoint_transform_gap(xi, eta, lam: float, tol: TolerancePolicy = DEFAULT_TOL) -> float:
    """|| Delta_lam(a*) - Delta_lam(a)* || for the rank-one a = xi (.|eta).

    Nonzero whenever xi, eta are non-orthogonal and linearly independent,
    which is why transform-preserving bijections cannot come from
    *-anti-automorphisms.
    """
    a = rank_one(xi, eta)
    lhs = aluthge_matrix(a.conj().T, lam, tol)
    rhs = aluthge_matrix(a, lam, tol).conj().T
    return frob(lhs - rhs)
