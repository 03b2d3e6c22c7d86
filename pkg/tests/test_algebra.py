"""Unit tests for block algebra elements and predicates."""

import numpy as np
import pytest

from aluthgelab.algebra import (
    AlgebraMismatch,
    BadIndex,
    VNAlgebra,
    center_basis,
    elem_eq,
    hermitian_part,
    is_central,
    is_hermitian,
    is_minimal_projection,
    is_partial_isometry,
    is_projection,
    jordan,
    matrix_units,
    operator_commute,
    pi_leq,
    pi_orthogonal,
    proj_leq,
    proj_orthogonal,
    triple,
)
from aluthgelab.linalg import NotHermitian
from aluthgelab import sampling

ALG = VNAlgebra((2, 3))


def test_algebra_validation():
    with pytest.raises(ValueError):
        VNAlgebra(())
    with pytest.raises(ValueError):
        VNAlgebra((2, 0))
    assert VNAlgebra((1, 2)).has_abelian_summand()
    assert not ALG.has_abelian_summand()


def test_element_shape_checks():
    with pytest.raises(AlgebraMismatch):
        ALG.element([np.eye(2)])  # wrong block count
    with pytest.raises(AlgebraMismatch):
        ALG.element([np.eye(2), np.eye(2)])  # wrong dim
    with pytest.raises(BadIndex):
        ALG.block_indicator(5)


def test_arithmetic_and_involution():
    rng = sampling.rng_for(21, "arith")
    a = sampling.random_element(rng, ALG)
    b = sampling.random_element(rng, ALG)
    assert elem_eq((a + b) - b, a)
    assert elem_eq((2j * a).adjoint(), -2j * a.adjoint())
    assert elem_eq((a @ b).adjoint(), b.adjoint() @ a.adjoint())
    assert elem_eq(a.conj().transpose(), a.adjoint())
    other = VNAlgebra((2, 2))
    with pytest.raises(AlgebraMismatch):
        a @ sampling.random_element(rng, other)


def test_jordan_and_triple():
    rng = sampling.rng_for(22, "jordan")
    a = sampling.random_element(rng, ALG)
    b = sampling.random_element(rng, ALG)
    assert elem_eq(jordan(a, b), jordan(b, a))
    one = ALG.identity()
    assert elem_eq(jordan(a, one), a)
    # {a, b, a} = a b* a
    assert elem_eq(triple(a, b, a), a @ b.adjoint() @ a)


def test_hermitian_part_reconstruction():
    rng = sampling.rng_for(23, "herm")
    a = sampling.random_element(rng, ALG)
    x, y = hermitian_part(a)
    assert is_hermitian(x) and is_hermitian(y)
    assert elem_eq(x + 1j * y, a)


def test_projection_predicates():
    p = ALG.block_indicator(0)
    q = ALG.block_indicator(1)
    assert is_projection(p)
    assert proj_orthogonal(p, q)
    assert proj_leq(p, ALG.identity())
    assert not proj_leq(ALG.identity(), p)
    assert not is_projection(2.0 * p)


def test_minimal_projection():
    units = matrix_units(ALG, 1)
    e11 = units.unit(0, 0)
    assert is_minimal_projection(e11)
    assert not is_minimal_projection(e11 + units.unit(1, 1))
    assert not is_minimal_projection(ALG.zero())


def test_matrix_unit_relations():
    units = matrix_units(ALG, 1)
    n = 3
    for i in range(n):
        for j in range(n):
            assert elem_eq(units.unit(i, j).adjoint(), units.unit(j, i))
            for k in range(n):
                for l in range(n):
                    prod = units.unit(i, j) @ units.unit(k, l)
                    expect = units.unit(i, l) if j == k else ALG.zero()
                    assert elem_eq(prod, expect)
    total = units.unit(0, 0) + units.unit(1, 1) + units.unit(2, 2)
    assert elem_eq(total, ALG.block_indicator(1))
    with pytest.raises(BadIndex):
        matrix_units(ALG, 7)


def test_partial_isometry_order():
    units = matrix_units(ALG, 1)
    e = units.unit(0, 1)
    v = units.unit(0, 1) + units.unit(1, 2)
    assert is_partial_isometry(e)
    assert is_partial_isometry(v)
    assert pi_leq(e, v)
    assert not pi_leq(v, e)
    assert pi_orthogonal(units.unit(0, 1), units.unit(2, 0))


def test_center():
    for z in center_basis(ALG):
        assert is_central(z)
    a = ALG.scalar(2.0 - 1j)
    assert is_central(a)
    units = matrix_units(ALG, 1)
    assert not is_central(units.unit(0, 1) + units.unit(1, 0))


def test_operator_commute():
    rng = sampling.rng_for(24, "opcomm")
    x = sampling.random_hermitian(rng, ALG)
    assert operator_commute(x, x @ x, cross_check_rng=sampling.rng_for(24, "cc1"))
    y = sampling.random_hermitian(rng, ALG)
    assert not operator_commute(x, y, cross_check_rng=sampling.rng_for(24, "cc2"))
    with pytest.raises(NotHermitian):
        operator_commute(sampling.random_element(rng, ALG), x)
