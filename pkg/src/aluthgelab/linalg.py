"""Dense complex matrix primitives built on a cyclic Jacobi eigensolver.

Everything here is deterministic: the Jacobi sweep order is fixed, ties in
the eigenvalue sort are broken by original index order, and no randomness
is used.  Matrices are plain ``numpy.complex128`` arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class NotHermitian(ValueError):
    pass


class NotPSD(ValueError):
    pass


class NoConvergence(RuntimeError):
    pass


@dataclass(frozen=True)
class TolerancePolicy:
    """Numerical policy shared by every matrix-analytic routine.

    eq_tol   -- relative Frobenius tolerance for matrix equality
    rank_tol -- relative singular-value cutoff for rank/range decisions
    psd_clip -- negative eigenvalues of nominally-PSD matrices with
                magnitude below psd_clip * ||m|| are clamped to zero;
                anything more negative is a hard error
    """

    eq_tol: float = 1e-9
    rank_tol: float = 1e-10
    psd_clip: float = 1e-12

    def __post_init__(self):
        for name in ("eq_tol", "rank_tol", "psd_clip"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ValueError(f"{name} must lie strictly inside (0, 1), got {value!r}")


DEFAULT_TOL = TolerancePolicy()


def as_matrix(m) -> np.ndarray:
    """Coerce to a finite complex 2-D array (raises ValueError otherwise)."""
    a = np.array(m, dtype=np.complex128)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={a.ndim}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError("matrix entries must be finite")
    return a


def frob(m) -> float:
    return float(np.linalg.norm(m))


def mat_eq(x, y, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    """Relative Frobenius equality: ||x-y|| <= eq_tol * max(1, ||x||, ||y||)."""
    return frob(np.asarray(x) - np.asarray(y)) <= tol.eq_tol * max(1.0, frob(x), frob(y))


def rel_residual(x, y) -> float:
    return frob(np.asarray(x) - np.asarray(y)) / max(1.0, frob(x), frob(y))


def hermitize(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.conj().T)


def _jacobi_rotate(h: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """Zero h[p,q] (and h[q,p]) with a complex Jacobi rotation, in place."""
    apq = h[p, q]
    absq = abs(apq)
    phase = apq / absq
    theta = 0.5 * math.atan2(2.0 * absq, h[p, p].real - h[q, q].real)
    c = math.cos(theta)
    s = math.sin(theta)
    se_m = s * phase.conjugate()  # s * e^{-i phi}
    se_p = s * phase              # s * e^{+i phi}

    # column update (right-multiply by the rotation)
    col_p = h[:, p].copy()
    col_q = h[:, q].copy()
    h[:, p] = c * col_p + se_m * col_q
    h[:, q] = -se_p * col_p + c * col_q
    # row update (left-multiply by its adjoint)
    row_p = h[p, :].copy()
    row_q = h[q, :].copy()
    h[p, :] = c * row_p + se_p * row_q
    h[q, :] = -se_m * row_p + c * row_q

    h[p, q] = 0.0
    h[q, p] = 0.0
    h[p, p] = h[p, p].real
    h[q, q] = h[q, q].real

    col_p = v[:, p].copy()
    col_q = v[:, q].copy()
    v[:, p] = c * col_p + se_m * col_q
    v[:, q] = -se_p * col_p + c * col_q


def _offdiag_norm(h: np.ndarray) -> float:
    return frob(h - np.diag(np.diagonal(h)))


def herm_eig(m, tol: TolerancePolicy = DEFAULT_TOL):
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi.

    Returns (eigenvalues, eigenvectors) with real eigenvalues sorted
    descending (ties broken by original index order) and unitary
    eigenvector columns, so that m = V diag(w) V*.
    """
    a = as_matrix(m)
    n, nc = a.shape
    if n != nc:
        raise NotHermitian(f"matrix is {n}x{nc}, not square")
    if not mat_eq(a, a.conj().T, tol):
        raise NotHermitian("matrix is not Hermitian within eq_tol")

    h = hermitize(a)
    v = np.eye(n, dtype=np.complex128)
    scale = frob(h)
    if scale == 0.0 or n == 1:
        w = np.diagonal(h).real.copy()
        return w, v

    stop = 1e-14 * scale
    skip = 1e-16 * scale
    max_sweeps = 100 * n * n
    for _ in range(max_sweeps):
        if _offdiag_norm(h) <= stop:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(h[p, q]) > skip:
                    _jacobi_rotate(h, v, p, q)
    else:
        raise NoConvergence(f"Jacobi did not converge within {max_sweeps} sweeps")

    w = np.diagonal(h).real.copy()
    order = np.argsort(-w, kind="stable")
    return w[order], np.ascontiguousarray(v[:, order])


def svd(m, tol: TolerancePolicy = DEFAULT_TOL):
    """SVD by one-sided (column) Jacobi: rotate column pairs until they are
    mutually orthogonal, so the Gram matrix is never formed and small
    singular values keep high relative accuracy.

    Returns (U, s, V) with m = U diag(s) V*, s nonnegative descending.
    Singular values at or below rank_tol * s_max are reported as exactly
    zero and the matching columns of U are zero (consistent with the
    partial-isometry polar convention).
    """
    a = as_matrix(m)
    rows, cols = a.shape
    if rows < cols:
        u, s, v = svd(a.conj().T, tol)
        return v, s, u

    scale = frob(a)
    if scale == 0.0:
        return (
            np.zeros((rows, cols), dtype=np.complex128),
            np.zeros(cols),
            np.eye(cols, dtype=np.complex128),
        )
    work = a.astype(np.complex128, copy=True) / scale
    v = np.eye(cols, dtype=np.complex128)
    # Gram entries below (eps * ||a||)^2 are pure roundoff; without this
    # floor a column that collapses to noise is chased into subnormals
    noise = 1e-32  # work is normalized to unit Frobenius norm
    max_sweeps = 100
    for _ in range(max_sweeps):
        rotated = False
        for p in range(cols - 1):
            for q in range(p + 1, cols):
                app = np.vdot(work[:, p], work[:, p]).real
                aqq = np.vdot(work[:, q], work[:, q]).real
                apq = np.vdot(work[:, p], work[:, q])  # Gram entry (p, q)
                if abs(apq) <= max(1e-15 * math.sqrt(app * aqq), noise):
                    continue
                rotated = True
                phase = apq / abs(apq)
                theta = 0.5 * math.atan2(2.0 * abs(apq), app - aqq)
                c = math.cos(theta)
                si = math.sin(theta)
                se_m = si * phase.conjugate()
                se_p = si * phase
                col_p = work[:, p].copy()
                col_q = work[:, q].copy()
                work[:, p] = c * col_p + se_m * col_q
                work[:, q] = -se_p * col_p + c * col_q
                col_p = v[:, p].copy()
                col_q = v[:, q].copy()
                v[:, p] = c * col_p + se_m * col_q
                v[:, q] = -se_p * col_p + c * col_q
        if not rotated:
            break
    else:
        raise NoConvergence(f"one-sided Jacobi did not converge within {max_sweeps} sweeps")

    raw = np.linalg.norm(work, axis=0)
    order = np.argsort(-raw, kind="stable")
    raw = raw[order].copy()
    work = work[:, order]
    v = np.ascontiguousarray(v[:, order])
    s = raw * scale
    cutoff = tol.rank_tol * (s[0] if s.size else 0.0)
    u = np.zeros((rows, cols), dtype=np.complex128)
    for i in range(cols):
        if s[i] > cutoff:
            u[:, i] = work[:, i] / raw[i]
        else:
            s[i] = 0.0
    return u, s, v


@dataclass(frozen=True)
class PolarParts:
    """a = u * modulus with u a partial isometry and u*u = rangeproj(modulus)."""

    u: np.ndarray
    modulus: np.ndarray


def polar_decompose(a, tol: TolerancePolicy = DEFAULT_TOL) -> PolarParts:
    """Polar decomposition with the von Neumann partial-isometry convention.

    u is supported only on singular directions above the rank cutoff; it is
    NOT extended to a unitary.
    """
    m = as_matrix(a)
    rows, cols = m.shape
    if rows != cols:
        raise ValueError(f"polar decomposition requires a square matrix, got {rows}x{cols}")
    uf, s, v = svd(m, tol)
    keep = s > 0.0
    u = uf[:, keep] @ v[:, keep].conj().T
    modulus = hermitize((v * s) @ v.conj().T)
    return PolarParts(u=u, modulus=modulus)


def _psd_eig(m, tol: TolerancePolicy):
    a = as_matrix(m)
    w, v = herm_eig(a, tol)
    scale = frob(a)
    if w.size and w[-1] < -tol.psd_clip * scale:
        raise NotPSD(f"eigenvalue {w[-1]:.3e} below -psd_clip * ||m|| = {-tol.psd_clip * scale:.3e}")
    return np.clip(w, 0.0, None), v


def psd_power(m, t: float, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """Fractional power of a PSD matrix with the 0^t := 0 convention.

    For t = 0 the zero eigenspace stays zero, so m^0 is the range
    projection of m, not the identity.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"exponent must lie in [0, 1], got {t!r}")
    w, v = _psd_eig(m, tol)
    wmax = float(w[0]) if w.size else 0.0
    zero = w <= tol.rank_tol * wmax
    with np.errstate(divide="ignore"):
        pw = np.where(zero, 0.0, w**t)
    return hermitize((v * pw) @ v.conj().T)


def range_projection(m, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """Orthogonal projection onto the range of a PSD matrix."""
    w, v = _psd_eig(m, tol)
    wmax = float(w[0]) if w.size else 0.0
    keep = w > tol.rank_tol * wmax
    vk = v[:, keep]
    return hermitize(vk @ vk.conj().T)
