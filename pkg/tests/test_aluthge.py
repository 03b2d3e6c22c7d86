"""Tests for the lambda-Aluthge transform and its lemma checks."""

import numpy as np
import pytest

from aluthgelab.algebra import VNAlgebra, elem_eq
from aluthgelab.aluthge import (
    ZeroVector,
    adjoint_transform_gap,
    aluthge,
    aluthge_matrix,
    aluthge_orbit,
    check_ap_lemma,
    check_fixed_point_lemma,
    check_identity_lemma,
    check_qnormal_adjoint_lemma,
    is_quasinormal,
    quasinormal_residual,
    rank_one,
    rank_one_aluthge,
)
from aluthgelab import sampling


def test_lambda_validation():
    with pytest.raises(ValueError):
        aluthge_matrix(np.eye(2), -0.1)
    with pytest.raises(ValueError):
        aluthge_matrix(np.eye(2), 1.1)
    with pytest.raises(ValueError):
        aluthge_matrix(np.zeros((2, 3)), 0.5)


def test_known_values():
    # normal matrices are fixed points for every lambda
    d = np.diag([2.0, -3.0]).astype(complex)
    for lam in (0.25, 0.5, 0.75, 1.0):
        assert np.linalg.norm(aluthge_matrix(d, lam) - d) <= 1e-12
    # square-zero nilpotent maps to zero
    n = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    assert np.linalg.norm(aluthge_matrix(n, 0.5)) <= 1e-14
    # the worked rank-one example
    a = np.array([[1.0, 1.0], [0.0, 0.0]], dtype=complex)
    expect = 0.5 * np.ones((2, 2))
    assert np.linalg.norm(aluthge_matrix(a, 0.5) - expect) <= 1e-12


def test_lambda_zero_is_exact_identity():
    rng = sampling.rng_for(31, "lam0")
    alg = VNAlgebra((2, 3))
    a = sampling.random_element(rng, alg)
    b = aluthge(a, 0.0)
    for x, y in zip(a.blocks, b.blocks):
        assert np.array_equal(x, y)


def test_rank_one_formula():
    rng = sampling.rng_for(32, "rankone")
    for k in range(30):
        n = int(rng.integers(2, 6))
        x = sampling.random_unit_vector(rng, n) * 2.0
        y = sampling.random_unit_vector(rng, n)
        lam = float(rng.random())
        closed = rank_one_aluthge(x, y, max(lam, 1e-3))
        general = aluthge_matrix(rank_one(x, y), max(lam, 1e-3))
        assert np.linalg.norm(closed - general) <= 1e-10
    # x orthogonal to y gives zero
    assert np.linalg.norm(rank_one_aluthge([1, 0], [0, 1], 0.5)) == 0.0
    with pytest.raises(ZeroVector):
        rank_one_aluthge([1, 0], [0, 0], 0.5)


def test_quasinormal_predicate():
    d = np.diag([1.0, 2.0, 0.0]).astype(complex)
    alg = VNAlgebra((3,))
    assert is_quasinormal(alg.element([d]))
    a = alg.element([np.array([[1, 1, 0], [0, 0, 0], [0, 0, 2]], dtype=complex)])
    assert not is_quasinormal(a)
    assert quasinormal_residual(a) > 1e-3


def test_fixed_point_lemma():
    alg = VNAlgebra((3,))
    rng = sampling.rng_for(33, "fixed")
    for singular in (False, True):
        qn = sampling.random_normal(rng, alg, singular=singular)
        v = check_fixed_point_lemma(qn, 0.5)
        assert v.passed and v.residuals["fixed_point_residual"] <= 1e-9
    a = sampling.random_element(rng, alg)
    v = check_fixed_point_lemma(a, 0.5)
    assert v.passed  # not quasi-normal and not fixed
    with pytest.raises(ValueError):
        check_fixed_point_lemma(a, 0.0)


def test_ap_lemma():
    alg = VNAlgebra((3,))
    rng = sampling.rng_for(34, "ap")
    # a quasi-normal and supported in p -> transform of ap recovers a
    w = sampling.random_unitary(rng, 3)
    z = np.array([1.5 + 0.5j, -2.0, 0.0])
    a = alg.element([(w * z) @ w.conj().T])
    p = alg.element([w[:, :2] @ w[:, :2].conj().T])
    v = check_ap_lemma(a, p, 0.5)
    assert v.passed and v.residuals["transform_residual"] <= 1e-9
    # generic a fails both sides consistently
    a2 = sampling.random_element(rng, alg)
    p2 = sampling.random_projection(rng, alg)
    assert check_ap_lemma(a2, p2, 0.5).passed
    with pytest.raises(Exception):
        check_ap_lemma(a2, a2, 0.5)  # not a projection


def test_identity_lemma():
    alg = VNAlgebra((2,))
    v = check_identity_lemma(alg.identity(), 0.5)
    assert v.passed and not v.vacuous
    v = check_identity_lemma(alg.element([np.diag([1.0, 2.0])]), 0.5)
    assert v.passed and v.vacuous


def test_qnormal_adjoint_lemma():
    alg = VNAlgebra((2,))
    rng = sampling.rng_for(35, "qadj")
    x = sampling.random_hermitian(rng, alg)
    v = check_qnormal_adjoint_lemma(x, 0.5)
    assert v.passed and not v.vacuous
    p = alg.element([np.diag([1.0, 0.0])])
    v = check_qnormal_adjoint_lemma(1j * p, 0.5)
    assert v.passed and v.vacuous  # premise fails for i*p
    with pytest.raises(ValueError):
        check_qnormal_adjoint_lemma(sampling.random_element(rng, alg), 0.5)


def test_orbit():
    alg = VNAlgebra((2,))
    nil = alg.element([np.array([[0.0, 1.0], [0.0, 0.0]])])
    orbit = aluthge_orbit(nil, 0.5, 3)
    assert len(orbit) == 4
    assert orbit[1].norm() <= 1e-14  # zero from step 1 on
    with pytest.raises(ValueError):
        aluthge_orbit(nil, 0.5, -1)


def test_adjoint_gap_closed_form():
    rng = sampling.rng_for(36, "gap")
    for _ in range(20):
        xi, eta = sampling.random_nonorthogonal_pair(rng, 3)
        gap = adjoint_transform_gap(xi, eta, 0.5)
        overlap = abs(np.vdot(eta, xi))
        expect = overlap * np.linalg.norm(np.outer(xi, xi.conj()) - np.outer(eta, eta.conj()))
        assert abs(gap - expect) <= 1e-9
        assert gap > 1e-3
