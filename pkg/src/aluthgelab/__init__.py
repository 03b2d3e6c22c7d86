"""Polar decompositions, lambda-Aluthge transforms and preserver maps on
finite direct sums of complex matrix blocks."""

from .linalg import (
    DEFAULT_TOL,
    NoConvergence,
    NotHermitian,
    NotPSD,
    PolarParts,
    TolerancePolicy,
    herm_eig,
    mat_eq,
    polar_decompose,
    psd_power,
    range_projection,
    svd,
)
from .algebra import (
    AlgElem,
    AlgebraMismatch,
    VNAlgebra,
    elem_eq,
    elem_residual,
    is_central,
    is_minimal_projection,
    is_partial_isometry,
    is_projection,
    jordan,
    matrix_units,
    triple,
)
from .aluthge import (
    Verdict,
    ZeroVector,
    aluthge,
    aluthge_matrix,
    aluthge_orbit,
    adjoint_transform_gap,
    check_ap_lemma,
    check_fixed_point_lemma,
    check_identity_lemma,
    check_qnormal_adjoint_lemma,
    is_quasinormal,
    quasinormal_residual,
    rank_one,
    rank_one_aluthge,
)
from .preservers import (
    AbelianInverse,
    AbelianZAbsZ,
    CentralSplit,
    Composed,
    ConjLinearConj,
    ExceptionalI2,
    FunctionMap,
    NotMinimal,
    NotScalar,
    PreserverMap,
    ScalarMap,
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
)
from .harness import Property, REGISTRY, SuiteConfig, run_suite
from . import sampling, serial

__version__ = "0.1.0"
