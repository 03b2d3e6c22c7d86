"""Seeded, reproducible samplers for matrices, algebra elements and maps.

Randomness comes from numpy's Philox counter-based generator.  Sub-streams
are derived by hashing ``"{seed}:{label}"`` with SHA-256 and using the first
128 bits of the digest as the Philox key, so any run is reproducible from
the master seed and the property label alone.
"""

from __future__ import annotations

import hashlib

import numpy as np

from .algebra import AlgElem, VNAlgebra
from .linalg import DEFAULT_TOL, TolerancePolicy, range_projection


def subseed(seed: int, label: str) -> int:
    digest = hashlib.sha256(f"{seed}:{label}".encode()).digest()
    return int.from_bytes(digest[:16], "big")


def rng_for(seed: int, label: str = "") -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=subseed(seed, label)))


def random_matrix(rng, n: int, m: int | None = None) -> np.ndarray:
    """Standard complex Gaussian entries (unit variance per entry)."""
    m = n if m is None else m
    return (rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))) / np.sqrt(2.0)


def random_unit_vector(rng, n: int) -> np.ndarray:
    v = random_matrix(rng, n, 1).ravel()
    return v / np.linalg.norm(v)


def random_unitary(rng, n: int) -> np.ndarray:
    """Gram-Schmidt orthonormalization of a Gaussian matrix, phase-fixed.

    The first nonzero entry of each column is made real positive, which
    pins the result down deterministically given the generator stream.
    """
    g = random_matrix(rng, n)
    q = np.zeros((n, n), dtype=np.complex128)
    for j in range(n):
        v = g[:, j].copy()
        for _ in range(2):  # one re-orthogonalization pass for stability
            for i in range(j):
                v -= np.vdot(q[:, i], v) * q[:, i]
        q[:, j] = v / np.linalg.norm(v)
    for j in range(n):
        k = int(np.argmax(np.abs(q[:, j]) > 1e-12))
        phase = q[k, j] / abs(q[k, j])
        q[:, j] *= phase.conjugate()
    return q


def random_element(rng, alg: VNAlgebra) -> AlgElem:
    return alg.element([random_matrix(rng, n) for n in alg.block_dims])


def random_hermitian(rng, alg: VNAlgebra) -> AlgElem:
    a = random_element(rng, alg)
    return 0.5 * (a + a.adjoint())


def random_unitary_elem(rng, alg: VNAlgebra) -> AlgElem:
    return alg.element([random_unitary(rng, n) for n in alg.block_dims])


def random_projection_matrix(rng, n: int, rank: int, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    if rank == 0:
        return np.zeros((n, n), dtype=np.complex128)
    g = random_matrix(rng, n, rank)
    return range_projection(g @ g.conj().T, tol)


def random_projection(rng, alg: VNAlgebra, tol: TolerancePolicy = DEFAULT_TOL) -> AlgElem:
    """Projection with an independently chosen rank in each block."""
    blocks = []
    for n in alg.block_dims:
        rank = int(rng.integers(0, n + 1))
        blocks.append(random_projection_matrix(rng, n, rank, tol))
    return alg.element(blocks)


def random_minimal_projection(rng, alg: VNAlgebra, block: int | None = None) -> AlgElem:
    """Rank-one projection xi (.|xi) supported in a single block."""
    k = int(rng.integers(0, len(alg.block_dims))) if block is None else block
    n = alg.block_dims[k]
    xi = random_unit_vector(rng, n)
    return alg.embed(k, np.outer(xi, xi.conj()))


def random_orthogonal_minimal_pair(rng, alg: VNAlgebra):
    """Two orthogonal minimal projections; requires dim > 1 somewhere or K >= 2."""
    big = [k for k, n in enumerate(alg.block_dims) if n >= 2]
    if big and (len(alg.block_dims) == 1 or rng.random() < 0.5):
        k = big[int(rng.integers(0, len(big)))]
        u = random_unitary(rng, alg.block_dims[k])
        p = alg.embed(k, np.outer(u[:, 0], u[:, 0].conj()))
        q = alg.embed(k, np.outer(u[:, 1], u[:, 1].conj()))
        return p, q
    if len(alg.block_dims) < 2:
        raise ValueError("algebra admits no two orthogonal minimal projections")
    k1, k2 = rng.permutation(len(alg.block_dims))[:2]
    return random_minimal_projection(rng, alg, int(k1)), random_minimal_projection(rng, alg, int(k2))


def random_normal(rng, alg: VNAlgebra, singular: bool = False) -> AlgElem:
    """Normal element w diag(z) w*; optionally with a zeroed eigenvalue.

    In finite dimensions quasi-normal coincides with normal, so these are
    the fixed points of every Delta_lam with lam > 0.  A singular normal
    exercises the non-unitary partial-isometry branch of the polar
    decomposition.
    """
    blocks = []
    for n in alg.block_dims:
        z = random_matrix(rng, n, 1).ravel()
        if singular and n > 1:
            z[int(rng.integers(0, n))] = 0.0
        w = random_unitary(rng, n)
        blocks.append((w * z) @ w.conj().T)
    return alg.element(blocks)


def random_square_zero(rng, alg: VNAlgebra) -> AlgElem:
    """Nilpotent of order two: w [[0, C], [0, 0]] w* per block (exact a^2 = 0)."""
    blocks = []
    for n in alg.block_dims:
        if n < 2:
            blocks.append(np.zeros((n, n), dtype=np.complex128))
            continue
        k = int(rng.integers(1, n))
        c = random_matrix(rng, k, n - k)
        raw = np.zeros((n, n), dtype=np.complex128)
        raw[:k, k:] = c
        w = random_unitary(rng, n)
        blocks.append(w @ raw @ w.conj().T)
    return alg.element(blocks)


def random_partial_isometry_matrix(rng, n: int, rank: int) -> np.ndarray:
    """u = sum over `rank` pairs of left/right orthonormal vectors."""
    if rank == 0:
        return np.zeros((n, n), dtype=np.complex128)
    left = random_unitary(rng, n)[:, :rank]
    right = random_unitary(rng, n)[:, :rank]
    return left @ right.conj().T


def random_nonorthogonal_pair(rng, n: int, min_overlap: float = 0.3):
    """Unit vectors (xi, eta), linearly independent with |<xi|eta>| >= min_overlap.

    eta is built as a balanced mix of xi and an orthogonal direction so
    that both the overlap and the independent component stay bounded away
    from zero.
    """
    if n < 2:
        raise ValueError("need dimension >= 2")
    xi = random_unit_vector(rng, n)
    z = random_unit_vector(rng, n)
    perp = z - np.vdot(xi, z) * xi
    while np.linalg.norm(perp) < 1e-3:
        z = random_unit_vector(rng, n)
        perp = z - np.vdot(xi, z) * xi
    perp /= np.linalg.norm(perp)
    t = min_overlap + (1.0 - 2.0 * min_overlap) * rng.random()  # overlap in [0.3, 0.7]
    phase = np.exp(2j * np.pi * rng.random())
    eta = phase * (t * xi + np.sqrt(1.0 - t * t) * perp)
    return xi, eta
