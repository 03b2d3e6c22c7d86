"""Tests for the preserver-map classes and their black-box checkers."""

import numpy as np
import pytest

from aluthgelab.algebra import VNAlgebra, elem_eq, elem_residual
from aluthgelab.preservers import (
    AbelianInverse,
    AbelianZAbsZ,
    CentralSplit,
    Composed,
    ConjLinearConj,
    ExceptionalI2,
    FunctionMap,
    NotMinimal,
    NotScalar,
    ScalarMultiple,
    TransposeConj,
    TrialReport,
    UnitaryConj,
    check_basic_properties,
    check_bmn_commutation,
    check_compression_identity,
    check_hermitian_consequences,
    check_hypothesis,
    check_m2_lemma,
    check_orthogonal_scalar_additivity,
    extract_scalar_map,
    h_value,
    pure_state_value,
    scalar_coefficient,
)
from aluthgelab import sampling

ALG = VNAlgebra((2, 2))


def _unitary(seed, alg=ALG):
    rng = sampling.rng_for(seed, "test_unitary")
    return sampling.random_unitary_elem(rng, alg)


def test_unitary_validation():
    with pytest.raises(ValueError):
        UnitaryConj(ALG.scalar(2.0))


def test_inverse_roundtrips():
    rng = sampling.rng_for(41, "roundtrip")
    v = _unitary(41)
    maps = [
        UnitaryConj(v),
        ConjLinearConj(v),
        TransposeConj(v),
        TransposeConj(v, conjugate=True),
        CentralSplit(ALG.block_indicator(0), UnitaryConj(v), ConjLinearConj(v)),
        Composed([UnitaryConj(v), ConjLinearConj(v)]),
    ]
    for phi in maps:
        inv = phi.inverse()
        for _ in range(5):
            a = sampling.random_element(rng, ALG)
            assert elem_residual(inv.apply(phi.apply(a)), a) <= 1e-10, phi.kind
            assert elem_residual(phi.apply(inv.apply(a)), a) <= 1e-10, phi.kind


def test_exceptional_i2():
    alg2 = VNAlgebra((2,))
    v = _unitary(42, alg2)
    phi = ExceptionalI2(1.0, v)
    # involution-based inverse
    rng = sampling.rng_for(42, "exc")
    inv = phi.inverse()
    for _ in range(5):
        a = sampling.random_element(rng, alg2)
        assert elem_residual(inv.apply(phi.apply(a)), a) <= 1e-10
    # the unit moves: Phi(1) = -1 with the unnormalized trace
    assert elem_eq(phi.apply(alg2.identity()), -1.0 * alg2.identity())
    norm = ExceptionalI2(1.0, v, normalized_trace=True)
    # normalized trace kills scalars, so no inverse exists
    assert norm.apply(alg2.scalar(3.0)).norm() <= 1e-12
    with pytest.raises(NotImplementedError):
        norm.inverse()
    with pytest.raises(ValueError):
        ExceptionalI2(0.0, v)
    with pytest.raises(ValueError):
        ExceptionalI2(1.0, _unitary(42))  # wrong algebra shape


def test_central_split_validation():
    v = _unitary(43)
    with pytest.raises(ValueError):
        CentralSplit(v, UnitaryConj(v), ConjLinearConj(v))  # p_c not a projection


def test_abelian_maps():
    alg = VNAlgebra((1, 1))
    inv = AbelianInverse(alg)
    two = alg.scalar(2.0)
    assert elem_eq(inv.apply(two), alg.scalar(0.5))
    assert elem_eq(inv.apply(alg.zero()), alg.zero())
    zabs = AbelianZAbsZ(alg)
    assert elem_eq(zabs.apply(two), alg.scalar(4.0))
    rng = sampling.rng_for(44, "abelian")
    for _ in range(10):
        a = sampling.random_element(rng, alg)
        assert elem_residual(zabs.inverse().apply(zabs.apply(a)), a) <= 1e-10
        assert elem_residual(inv.inverse().apply(inv.apply(a)), a) <= 1e-10
    with pytest.raises(ValueError):
        AbelianInverse(ALG)


def test_trial_report_invariant():
    with pytest.raises(ValueError):
        TrialReport("x", 1, 1.0, False, 0, counterexample=None)
    ok = TrialReport("x", 1, 0.0, True, 0)
    assert ok.passed


def test_hypotheses_pass_for_isomorphisms():
    v = _unitary(45)
    for phi in (UnitaryConj(v), ConjLinearConj(v),
                CentralSplit(ALG.block_indicator(0), UnitaryConj(v), ConjLinearConj(v))):
        for which in ("h1", "h2", "h3", "h4"):
            rep = check_hypothesis(phi, which, 0.5, seed=45, n_trials=20)
            assert rep.max_residual < 1e-7, (phi.kind, which, rep.max_residual)


def test_transpose_fails_hypotheses():
    phi = TransposeConj(_unitary(46, VNAlgebra((2,))))
    rep = check_hypothesis(phi, "h1", 0.5, seed=46, n_trials=20)
    assert not rep.passed
    assert rep.counterexample is not None


def test_function_map_black_box():
    v = _unitary(47)
    phi = FunctionMap(ALG, lambda a: v @ a @ v.adjoint(), kind="custom_unitary")
    rep = check_hypothesis(phi, "h3", 0.5, seed=47, n_trials=10)
    assert rep.passed


def test_basic_and_hermitian_suites():
    v = _unitary(48)
    phi = ConjLinearConj(v)
    reports = check_basic_properties(phi, "h3", 0.5, seed=48, n_trials=8)
    assert len(reports) == 11
    assert all(r.passed for r in reports), [r.property_id for r in reports if not r.passed]
    herm = check_hermitian_consequences(phi, seed=48, n_trials=8)
    assert all(r.passed for r in herm)


def test_scalar_map_extraction():
    v = _unitary(49)
    assert extract_scalar_map(UnitaryConj(v)).classification == "identity"
    assert extract_scalar_map(ConjLinearConj(v)).classification == "conjugation"
    assert h_value(ConjLinearConj(v), 1 + 2j) == pytest.approx(1 - 2j)
    with pytest.raises(NotScalar):
        scalar_coefficient(ALG.block_indicator(0))


def test_pure_state_and_compression():
    rng = sampling.rng_for(50, "state")
    p = sampling.random_minimal_projection(rng, ALG)
    a = sampling.random_element(rng, ALG)
    val = pure_state_value(p, a)
    assert elem_residual(p @ a @ p, val * p) <= 1e-9
    with pytest.raises(NotMinimal):
        pure_state_value(ALG.identity(), a)
    rep = check_compression_identity(UnitaryConj(_unitary(50)), 0.5, seed=50, n_trials=20)
    assert rep.max_residual < 1e-7


def test_m2_lemma_validation_and_block_diagonal_case():
    a = np.diag([3.0, 2.0]).astype(complex)
    p_hat = np.diag([1.0, 0.0]).astype(complex)
    v = check_m2_lemma(a, p_hat, 2.0, 0.5)
    assert v.passed and not v.vacuous
    with pytest.raises(ValueError):
        check_m2_lemma(a, p_hat, 0.0, 0.5)
    with pytest.raises(ValueError):
        check_m2_lemma(a, p_hat, 2.0, 0.0)
    # nonzero (1,2) entry with a22 = mu: second premise must fail
    bad = np.array([[1.0, 1.0], [0.5, 2.0]], dtype=complex)
    v = check_m2_lemma(bad, p_hat, 2.0, 0.5)
    assert v.vacuous
    assert v.residuals["premise2"] > 1e-6


def test_orthogonal_scalar_additivity():
    v = _unitary(51)
    rep = check_orthogonal_scalar_additivity(UnitaryConj(v), seed=51, n_trials=30)
    assert rep.passed


def test_bmn_commutation_discriminators():
    alg2 = VNAlgebra((2,))
    v = _unitary(52, alg2)
    exc = ExceptionalI2(1.0, v)
    rep = check_bmn_commutation(exc, 0.5, seed=52, n_trials=30)
    assert rep.max_residual < 1e-7
    scaled = ScalarMultiple(2j, UnitaryConj(v))
    rep = check_bmn_commutation(scaled, 0.5, seed=52, n_trials=30)
    assert rep.max_residual < 1e-7
    # ... but both fail h3
    assert not check_hypothesis(exc, "h3", 0.5, seed=52, n_trials=10).passed
    assert not check_hypothesis(scaled, "h3", 0.5, seed=52, n_trials=10).passed
    with pytest.raises(ValueError):
        ScalarMultiple(0.0, UnitaryConj(v))
