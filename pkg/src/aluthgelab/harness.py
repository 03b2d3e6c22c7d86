"""Seeded property suites: the registry of checkable properties and the
deterministic suite runner behind the `verify` command.

Every property is pure given (seed, config): trial streams are derived by
hashing the seed with the property id, so reports are byte-reproducible.
Expected-fail properties are first class -- the suite records the raw
verdict and scores `ok` as "the observed outcome matches the expectation".
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import preservers as P
from . import sampling
from .algebra import VNAlgebra, elem_residual
from .aluthge import (
    adjoint_transform_gap,
    aluthge,
    aluthge_matrix,
    check_ap_lemma,
    check_fixed_point_lemma,
    check_identity_lemma,
    check_qnormal_adjoint_lemma,
    is_quasinormal,
    rank_one,
    rank_one_aluthge,
)
from .linalg import DEFAULT_TOL, TolerancePolicy, frob, polar_decompose, range_projection, rel_residual
from .preservers import TrialReport, _Tracker, check_hypothesis, check_m2_lemma
from .serial import report_to_json


DEFAULT_LAMBDA_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)
DEFAULT_PROFILES = ((2,), (3,), (2, 2), (1,), (1, 2))
POSITIVE_LAMBDAS = (0.25, 0.5, 0.75, 1.0)


@dataclass(frozen=True)
class SuiteConfig:
    """Knobs shared by every property run."""

    seed: int
    lambda_grid: tuple = DEFAULT_LAMBDA_GRID
    block_profiles: tuple = DEFAULT_PROFILES
    trials_per_property: int = 200
    tol: TolerancePolicy = DEFAULT_TOL

    def __post_init__(self):
        if self.trials_per_property < 1:
            raise ValueError("trials_per_property must be >= 1")
        for lam in self.lambda_grid:
            if not 0.0 <= lam <= 1.0:
                raise ValueError(f"lambda grid value {lam!r} outside [0, 1]")
        for prof in self.block_profiles:
            VNAlgebra(tuple(prof))  # validates


@dataclass(frozen=True)
class Property:
    """A named, seeded check with a declared expected outcome."""

    pid: str
    description: str
    expect: str  # "pass" or "fail"
    run: callable = field(repr=False, compare=False, default=None)


def _tracker(cfg: SuiteConfig, pid: str, threshold: float | None = None) -> tuple:
    thr = 10.0 * cfg.tol.eq_tol if threshold is None else threshold
    sub = sampling.subseed(cfg.seed, pid)
    return _Tracker(pid, sub, thr), sampling.rng_for(cfg.seed, pid)


def _per_cell(cfg: SuiteConfig, cells: int) -> int:
    return max(1, cfg.trials_per_property // max(1, cells))


def _positive_lambdas(cfg: SuiteConfig):
    return [l for l in cfg.lambda_grid if l > 0.0] or list(POSITIVE_LAMBDAS)


# --- map factories (deterministic per seed and profile) -------------------

def _unitary_conj(cfg, profile):
    rng = sampling.rng_for(cfg.seed, f"map:unitary_conj:{profile}")
    return P.UnitaryConj(sampling.random_unitary_elem(rng, VNAlgebra(profile)), cfg.tol)


def _conj_linear_conj(cfg, profile):
    rng = sampling.rng_for(cfg.seed, f"map:conj_linear_conj:{profile}")
    return P.ConjLinearConj(sampling.random_unitary_elem(rng, VNAlgebra(profile)), cfg.tol)


def _central_split(cfg, profile):
    alg = VNAlgebra(profile)
    rng = sampling.rng_for(cfg.seed, f"map:central_split:{profile}")
    v = sampling.random_unitary_elem(rng, alg)
    p_c = alg.block_indicator(0)  # linear on the first central summand
    return P.CentralSplit(p_c, P.UnitaryConj(v, cfg.tol), P.ConjLinearConj(v, cfg.tol), cfg.tol)


def _transpose_conj(cfg, profile):
    rng = sampling.rng_for(cfg.seed, f"map:transpose_conj:{profile}")
    return P.TransposeConj(sampling.random_unitary_elem(rng, VNAlgebra(profile)), tol=cfg.tol)


def _exceptional_i2(cfg, normalized=False):
    rng = sampling.rng_for(cfg.seed, "map:exceptional_i2")
    v = sampling.random_unitary_elem(rng, VNAlgebra((2,)))
    return P.ExceptionalI2(1.0, v, normalized_trace=normalized, tol=cfg.tol)


def _scalar_multiple(cfg, profile):
    return P.ScalarMultiple(2j, _unitary_conj(cfg, profile))


_ISO_FACTORIES = {
    "unitary_conj": _unitary_conj,
    "conj_linear_conj": _conj_linear_conj,
    "central_split": _central_split,
}


def _iso_profiles(cfg, kind):
    if kind == "central_split":
        return [tuple(p) for p in cfg.block_profiles if len(p) >= 2]
    return [tuple(p) for p in cfg.block_profiles]


def _abelian_profiles(cfg):
    return [tuple(p) for p in cfg.block_profiles if all(n == 1 for n in p)]


# --- core transform properties --------------------------------------------

def _run_polar_core(cfg):
    tracker, rng = _tracker(cfg, "polar_core", 1e-8)
    sizes = range(2, 7)
    per = _per_cell(cfg, len(sizes))
    for n in sizes:
        for _ in range(per):
            a = sampling.random_matrix(rng, n)
            parts = polar_decompose(a, cfg.tol)
            tracker.record(rel_residual(parts.u @ parts.modulus, a), a=a)
            proj = range_projection(parts.modulus, cfg.tol)
            tracker.record(rel_residual(parts.u.conj().T @ parts.u, proj), a=a)
    return [tracker.report()]


def _run_lambda_zero(cfg):
    tracker, rng = _tracker(cfg, "lambda_zero_exact")
    for _ in range(_per_cell(cfg, 1)):
        prof = cfg.block_profiles[int(rng.integers(0, len(cfg.block_profiles)))]
        a = sampling.random_element(rng, VNAlgebra(tuple(prof)))
        b = aluthge(a, 0.0, cfg.tol)
        exact = all(np.array_equal(x, y) for x, y in zip(a.blocks, b.blocks))
        tracker.record(0.0 if exact else 1.0, a=a)
    return [tracker.report()]


def _run_unitary_covariance(cfg):
    tracker, rng = _tracker(cfg, "unitary_covariance", 1e-7)
    lams = _positive_lambdas(cfg)
    per = _per_cell(cfg, len(lams))
    for lam in lams:
        for _ in range(per):
            n = int(rng.integers(2, 6))
            a = sampling.random_matrix(rng, n)
            w = sampling.random_unitary(rng, n)
            lhs = aluthge_matrix(w @ a @ w.conj().T, lam, cfg.tol)
            rhs = w @ aluthge_matrix(a, lam, cfg.tol) @ w.conj().T
            tracker.record(rel_residual(lhs, rhs), a=a, w=w, **{"lambda": lam})
    return [tracker.report()]


def _run_fixed_point(cfg):
    tracker, rng = _tracker(cfg, "fixed_point")
    lams = _positive_lambdas(cfg)
    per = _per_cell(cfg, 2 * len(lams))
    bad = 0
    for lam in lams:
        for k in range(per):
            prof = cfg.block_profiles[int(rng.integers(0, len(cfg.block_profiles)))]
            alg = VNAlgebra(tuple(prof))
            qn = sampling.random_normal(rng, alg, singular=(k % 2 == 0))
            verdict = check_fixed_point_lemma(qn, lam, cfg.tol)
            tracker.record(0.0 if verdict.passed else 1.0, a=qn, **{"lambda": lam})
            if max(alg.block_dims) >= 2:
                a = sampling.random_element(rng, alg)
                if is_quasinormal(a, cfg.tol):
                    continue  # astronomically unlikely; skip rather than mislabel
                res = elem_residual(aluthge(a, lam, cfg.tol), a)
                if res <= 1e-6:
                    bad += 1
                    tracker.record(1.0, a=a, **{"lambda": lam})
                verdict = check_fixed_point_lemma(a, lam, cfg.tol)
                tracker.record(0.0 if verdict.passed else 1.0, a=a, **{"lambda": lam})
    return [tracker.report(false_fixed_points=bad)]


def _run_ap_lemma(cfg):
    tracker, rng = _tracker(cfg, "ap_lemma")
    lams = _positive_lambdas(cfg)
    per = _per_cell(cfg, 2 * len(lams))
    for lam in lams:
        for _ in range(per):
            prof = cfg.block_profiles[int(rng.integers(0, len(cfg.block_profiles)))]
            alg = VNAlgebra(tuple(prof))
            # family 1: quasi-normal a supported inside p (forward direction)
            pb, ab = [], []
            for n in alg.block_dims:
                w = sampling.random_unitary(rng, n)
                r = int(rng.integers(0, n + 1))
                z = np.zeros(n, dtype=np.complex128)
                z[:r] = sampling.random_matrix(rng, r, 1).ravel() if r else z[:r]
                pb.append(w[:, :r] @ w[:, :r].conj().T)
                ab.append((w * z) @ w.conj().T)
            p = alg.element(pb)
            a = alg.element(ab)
            verdict = check_ap_lemma(a, p, lam, cfg.tol)
            tracker.record(0.0 if verdict.passed else 1.0, a=a, p=p, **{"lambda": lam})
            # family 2: generic a (backward direction, usually ap != pa)
            a2 = sampling.random_element(rng, alg)
            p2 = sampling.random_projection(rng, alg, cfg.tol)
            verdict = check_ap_lemma(a2, p2, lam, cfg.tol)
            tracker.record(0.0 if verdict.passed else 1.0, a=a2, p=p2, **{"lambda": lam})
    return [tracker.report()]


def _run_identity_lemma(cfg):
    tracker, rng = _tracker(cfg, "identity_lemma")
    lams = _positive_lambdas(cfg)
    per = _per_cell(cfg, len(lams))
    nonvac = 0
    for lam in lams:
        for _ in range(per):
            prof = cfg.block_profiles[int(rng.integers(0, len(cfg.block_profiles)))]
            alg = VNAlgebra(tuple(prof))
            a = sampling.random_element(rng, alg)
            if elem_residual(a, alg.identity()) <= 0.1:
                a = a + alg.scalar(1.0)  # push away from 1 to make the check informative
            verdict = check_identity_lemma(a, lam, cfg.tol)
            nonvac += 0 if verdict.vacuous else 1
            tracker.record(0.0 if verdict.passed else 1.0, a=a, **{"lambda": lam})
            one = check_identity_lemma(alg.identity(), lam, cfg.tol)
            tracker.record(0.0 if (one.passed and not one.vacuous) else 1.0, **{"lambda": lam})
    return [tracker.report(nonvacuous_identity_hits=nonvac + len(lams) * per)]


def _run_qnormal_adjoint(cfg):
    tracker, rng = _tracker(cfg, "qnormal_adjoint")
    lams = _positive_lambdas(cfg)
    per = _per_cell(cfg, len(lams))
    nonvac = 0
    for lam in lams:
        for k in range(per):
            prof = cfg.block_profiles[int(rng.integers(0, len(cfg.block_profiles)))]
            alg = VNAlgebra(tuple(prof))
            if k % 3 == 0:
                a = sampling.random_hermitian(rng, alg)  # premise holds, conclusion trivial
            else:
                a = sampling.random_normal(rng, alg)
            verdict = check_qnormal_adjoint_lemma(a, lam, cfg.tol)
            nonvac += 0 if verdict.vacuous else 1
            tracker.record(0.0 if verdict.passed else 1.0, a=a, **{"lambda": lam})
    return [tracker.report(nonvacuous=nonvac)]


def _run_kernel(cfg):
    tracker, rng = _tracker(cfg, "kernel")
    lams = _positive_lambdas(cfg)
    per = _per_cell(cfg, 2 * len(lams))
    for lam in lams:
        for _ in range(per):
            prof = cfg.block_profiles[int(rng.integers(0, len(cfg.block_profiles)))]
            alg = VNAlgebra(tuple(prof))
            nil = sampling.random_square_zero(rng, alg)
            ta = aluthge(nil, lam, cfg.tol)
            tracker.record(ta.norm() / max(1e-30, nil.norm()) if nil.norm() > 0 else 0.0, a=nil)
            a = sampling.random_element(rng, alg)
            sq = (a @ a).norm()
            if sq > 1e-4 * a.norm() ** 2:
                near_zero = aluthge(a, lam, cfg.tol).norm() <= 1e-6 * a.norm()
                tracker.record(1.0 if near_zero else 0.0, a=a, **{"lambda": lam})
    return [tracker.report()]


def _run_rank_one(cfg):
    tracker, rng = _tracker(cfg, "rank_one", 1e-8)
    per = _per_cell(cfg, 1)
    lams = _positive_lambdas(cfg)
    for k in range(per):
        n = int(rng.integers(2, 7))
        x = sampling.random_unit_vector(rng, n) * (0.5 + 2.0 * rng.random())
        if k % 5 == 0:  # include orthogonal pairs
            y = sampling.random_unit_vector(rng, n)
            y = y - np.vdot(x, y) * x / np.vdot(x, x)
        else:
            y = sampling.random_unit_vector(rng, n) * (0.5 + 2.0 * rng.random())
        lam = lams[k % len(lams)]
        closed = rank_one_aluthge(x, y, lam)
        general = aluthge_matrix(rank_one(x, y), lam, cfg.tol)
        tracker.record(rel_residual(closed, general), x=np.asarray(x), y=np.asarray(y), **{"lambda": lam})
    return [tracker.report()]


def _run_adjoint_witness(cfg):
    tracker, rng = _tracker(cfg, "adjoint_witness")
    per = max(50, _per_cell(cfg, 3))
    for lam in (0.25, 0.5, 0.75):
        for _ in range(per):
            n = int(rng.integers(2, 6))
            xi, eta = sampling.random_nonorthogonal_pair(rng, n)
            gap = adjoint_transform_gap(xi, eta, lam, cfg.tol)
            tracker.record(1.0 if gap <= 1e-3 else 0.0, xi=np.asarray(xi), eta=np.asarray(eta), gap=gap)
    return [tracker.report()]


# --- the M_2 technical lemma ----------------------------------------------

def m2_premise_instance(rng, tol: TolerancePolicy = DEFAULT_TOL):
    """(a, p_hat, mu): a premise-satisfying instance of the M_2 lemma.

    In the eigenbasis of p_hat the premises force the (1,2) entry to vanish
    and the (2,2) entry to equal mu; the (1,1) and (2,1) entries are free.
    """
    mu = complex(sampling.random_matrix(rng, 1, 1)[0, 0])
    while abs(mu) < 0.1:
        mu = complex(sampling.random_matrix(rng, 1, 1)[0, 0])
    tilde = np.zeros((2, 2), dtype=np.complex128)
    tilde[0, 0] = complex(sampling.random_matrix(rng, 1, 1)[0, 0])
    tilde[1, 0] = complex(sampling.random_matrix(rng, 1, 1)[0, 0])
    tilde[1, 1] = mu
    w = sampling.random_unitary(rng, 2)
    a = w @ tilde @ w.conj().T
    p_hat = np.outer(w[:, 0], w[:, 0].conj())
    return a, p_hat, mu


def m2_contradiction_witness(rng):
    """(a, p_hat, mu) with a nonzero (1,2) entry: must violate a premise."""
    mu = complex(sampling.random_matrix(rng, 1, 1)[0, 0])
    while abs(mu) < 0.1:
        mu = complex(sampling.random_matrix(rng, 1, 1)[0, 0])
    a = sampling.random_matrix(rng, 2)
    a[1, 1] = mu
    while abs(a[0, 1]) < 0.1:
        a[0, 1] = complex(sampling.random_matrix(rng, 1, 1)[0, 0])
    return a, np.diag([1.0 + 0j, 0.0]), mu


def _run_m2_lemma(cfg):
    tracker, rng = _tracker(cfg, "m2_lemma")
    lams = _positive_lambdas(cfg)
    per = _per_cell(cfg, len(lams))
    nonvac = 0
    for lam in lams:
        for _ in range(per):
            a, p_hat, mu = m2_premise_instance(rng, cfg.tol)
            verdict = check_m2_lemma(a, p_hat, mu, lam, cfg.tol)
            nonvac += 0 if verdict.vacuous else 1
            tracker.record(0.0 if verdict.passed else 1.0, a=a, p_hat=p_hat, mu=mu, **{"lambda": lam})
    return [tracker.report(nonvacuous=nonvac)]


def _run_m2_witness(cfg):
    tracker, rng = _tracker(cfg, "m2_witness")
    per = _per_cell(cfg, 1)
    for k in range(per):
        lam = _positive_lambdas(cfg)[k % len(_positive_lambdas(cfg))]
        a, p_hat, mu = m2_contradiction_witness(rng)
        verdict = check_m2_lemma(a, p_hat, mu, lam, cfg.tol)
        # the witness must break a premise (vacuous verdict), never reach the conclusion
        tracker.record(0.0 if verdict.vacuous else 1.0, a=a, mu=mu, **{"lambda": lam})
    return [tracker.report()]


# --- preserver properties -------------------------------------------------

def _run_hypothesis(cfg, kind, which, threshold=1e-7):
    reports = []
    profiles = _iso_profiles(cfg, kind)
    cells = max(1, len(cfg.lambda_grid) * len(profiles))
    per = _per_cell(cfg, cells)
    for profile in profiles:
        phi = _ISO_FACTORIES[kind](cfg, profile)
        for lam in cfg.lambda_grid:
            pid = f"{which}:{kind}:{profile}:lambda={lam}"
            rep = check_hypothesis(phi, which, lam, cfg.seed, n_trials=per, tol=cfg.tol, property_id=pid)
            if rep.max_residual < threshold and not rep.passed:
                rep = TrialReport(rep.property_id, rep.n_trials, rep.max_residual, True, rep.seed, None, rep.extra)
            reports.append(rep)
    return reports


def _run_single_hypothesis(cfg, phi, which, pid, lams=None):
    reports = []
    lams = cfg.lambda_grid if lams is None else lams
    per = _per_cell(cfg, len(lams))
    for lam in lams:
        reports.append(
            check_hypothesis(phi, which, lam, cfg.seed, n_trials=per, tol=cfg.tol, property_id=f"{pid}:lambda={lam}")
        )
    return reports


def _run_bmn(cfg, phi, pid, lams=None):
    lams = _positive_lambdas(cfg) if lams is None else lams
    tracker, rng = _tracker(cfg, pid, 1e-7)
    per = _per_cell(cfg, len(lams))
    for lam in lams:
        for _ in range(per):
            a = sampling.random_element(rng, phi.domain)
            res = elem_residual(phi.apply(aluthge(a, lam, cfg.tol)), aluthge(phi.apply(a), lam, cfg.tol))
            tracker.record(res, a=a, **{"lambda": lam})
    return [tracker.report()]


def _run_additivity(cfg, factory, pid):
    reports = []
    for profile in _abelian_profiles(cfg) or [(1,)]:
        phi = factory(VNAlgebra(profile))
        alg = phi.domain
        tracker, rng = _tracker(cfg, f"{pid}:{profile}")
        one = alg.identity()
        tracker.record(elem_residual(phi.apply(one + one), phi.apply(one) + phi.apply(one)))
        per = _per_cell(cfg, 1)
        for _ in range(per):
            a = sampling.random_element(rng, alg)
            b = sampling.random_element(rng, alg)
            tracker.record(elem_residual(phi.apply(a + b), phi.apply(a) + phi.apply(b)), a=a, b=b)
        reports.append(tracker.report())
    return reports


def _run_basic(cfg, kind):
    profiles = _iso_profiles(cfg, kind)
    profile = (2, 2) if (2, 2) in profiles else profiles[0]
    phi = _ISO_FACTORIES[kind](cfg, profile)
    per = max(1, _per_cell(cfg, 11))
    return P.check_basic_properties(phi, "h3", 0.5, cfg.seed, n_trials=per, tol=cfg.tol)


def _run_herm(cfg, kind):
    profiles = _iso_profiles(cfg, kind)
    profile = (2, 2) if (2, 2) in profiles else profiles[0]
    phi = _ISO_FACTORIES[kind](cfg, profile)
    per = max(1, _per_cell(cfg, 6))
    return P.check_hermitian_consequences(phi, cfg.seed, n_trials=per, tol=cfg.tol)


def _run_scalar_map(cfg, kind, expected_class):
    profiles = _iso_profiles(cfg, kind)
    profile = (2, 2) if (2, 2) in profiles else profiles[0]
    phi = _ISO_FACTORIES[kind](cfg, profile)
    smap = P.extract_scalar_map(phi, tol=cfg.tol)
    tracker, _ = _tracker(cfg, f"scalar_map:{kind}")
    tracker.record(0.0 if smap.classification == expected_class else 1.0, expected=expected_class)
    return [tracker.report(classification=smap.classification)]


def _run_compression(cfg, kind):
    profiles = _iso_profiles(cfg, kind)
    profile = (2, 2) if (2, 2) in profiles else profiles[0]
    phi = _ISO_FACTORIES[kind](cfg, profile)
    rep = P.check_compression_identity(phi, 0.5, cfg.seed, n_trials=_per_cell(cfg, 1), tol=cfg.tol)
    if rep.max_residual < 1e-7 and not rep.passed:
        rep = TrialReport(rep.property_id, rep.n_trials, rep.max_residual, True, rep.seed, None, rep.extra)
    return [rep]


def _run_orthadd(cfg, kind):
    profiles = [p for p in _iso_profiles(cfg, kind) if sum(p) >= 2]
    profile = (2, 2) if (2, 2) in profiles else profiles[0]
    phi = _ISO_FACTORIES[kind](cfg, profile)
    return [P.check_orthogonal_scalar_additivity(phi, cfg.seed, n_trials=_per_cell(cfg, 1), tol=cfg.tol)]


# --- registry -------------------------------------------------------------

def build_registry() -> dict:
    props = []

    def add(pid, description, expect, run):
        props.append(Property(pid, description, expect, run))

    add("polar_core", "polar decomposition reconstructs a = u|a| with u*u the range projection of |a|", "pass", _run_polar_core)
    add("lambda_zero_exact", "the lambda = 0 transform returns its input bit-exactly", "pass", _run_lambda_zero)
    add("unitary_covariance", "Delta(w a w*) = w Delta(a) w* for unitary w", "pass", _run_unitary_covariance)
    add("fixed_point", "quasi-normal iff fixed by Delta_lambda (lambda > 0), both directions", "pass", _run_fixed_point)
    add("ap_lemma", "Delta(ap) = a iff a = pa = ap and a quasi-normal", "pass", _run_ap_lemma)
    add("identity_lemma", "Delta(a) = 1 only for a = 1 (sampling falsification)", "pass", _run_identity_lemma)
    add("qnormal_adjoint", "quasi-normal a with Delta(a*) = a must be Hermitian", "pass", _run_qnormal_adjoint)
    add("kernel", "Delta(a) = 0 iff a^2 = 0", "pass", _run_kernel)
    add("rank_one", "closed form Delta(x(.|y)) = (<x|y>/||y||^2) y(.|y) matches the general path", "pass", _run_rank_one)
    add("adjoint_witness", "Delta(a*) differs from Delta(a)* on rank-one witnesses", "pass", _run_adjoint_witness)
    add("m2_lemma", "M_2 technical lemma: premises force the off-corner p a (1-p) to vanish", "pass", _run_m2_lemma)
    add("m2_witness", "the contradiction witness (nonzero (1,2) entry) always violates a premise", "pass", _run_m2_witness)

    for kind in ("unitary_conj", "conj_linear_conj", "central_split"):
        label = kind.replace("_", " ")
        for which in ("h1", "h2", "h3", "h4"):
            add(
                f"{which}:{kind}",
                f"{label} intertwines Delta with the {which} product across the lambda grid and profiles",
                "pass",
                (lambda c, k=kind, w=which: _run_hypothesis(c, k, w)),
            )
        add(f"basic:{kind}", f"the 11-item consequence suite holds for {label}", "pass",
            (lambda c, k=kind: _run_basic(c, k)))
        add(f"hermitian:{kind}", f"hermitian-side consequences hold for {label}", "pass",
            (lambda c, k=kind: _run_herm(c, k)))

    add("scalar_map:unitary_conj", "extracted scalar map is the identity for unitary conjugation", "pass",
        (lambda c: _run_scalar_map(c, "unitary_conj", "identity")))
    add("scalar_map:conj_linear_conj", "extracted scalar map is complex conjugation for the conjugate-linear variant", "pass",
        (lambda c: _run_scalar_map(c, "conj_linear_conj", "conjugation")))
    add("compression:unitary_conj", "compression identity Phi(p)Phi(a)Phi(p) = h(phi_p(a))Phi(p), unitary case", "pass",
        (lambda c: _run_compression(c, "unitary_conj")))
    add("compression:conj_linear_conj", "compression identity, conjugate-linear case", "pass",
        (lambda c: _run_compression(c, "conj_linear_conj")))
    add("orthogonal_additivity:unitary_conj", "additivity on orthogonal minimal scalars, unitary case", "pass",
        (lambda c: _run_orthadd(c, "unitary_conj")))
    add("orthogonal_additivity:central_split", "additivity on orthogonal minimal scalars, central-split case", "pass",
        (lambda c: _run_orthadd(c, "central_split")))

    # discriminators: these are REQUIRED to fail where marked
    add("h1:transpose_conj", "transpose conjugation (an anti-automorphism) breaks the h1 intertwining", "fail",
        (lambda c: _run_single_hypothesis(c, _transpose_conj(c, (2,)), "h1", "h1:transpose_conj", lams=(0.5,))))
    add("h3:transpose_conj", "transpose conjugation breaks the h3 intertwining", "fail",
        (lambda c: _run_single_hypothesis(c, _transpose_conj(c, (2,)), "h3", "h3:transpose_conj", lams=(0.5,))))
    add("h3:exceptional_i2", "the exceptional 2x2 linear preserver fails h3 (it moves the unit)", "fail",
        (lambda c: _run_single_hypothesis(c, _exceptional_i2(c), "h3", "h3:exceptional_i2", lams=(0.5,))))
    add("bmn:exceptional_i2", "the exceptional 2x2 map does commute with Delta as a linear preserver", "pass",
        (lambda c: _run_bmn(c, _exceptional_i2(c), "bmn:exceptional_i2")))
    add("h3:scalar_multiple", "a 2i-scalar multiple of a unitary conjugation fails h3 at the unit", "fail",
        (lambda c: _run_single_hypothesis(c, _scalar_multiple(c, (2,)), "h3", "h3:scalar_multiple", lams=(0.5,))))
    add("bmn:scalar_multiple", "scalar multiples still commute with Delta as linear preservers", "pass",
        (lambda c: _run_bmn(c, _scalar_multiple(c, (2,)), "bmn:scalar_multiple")))

    # abelian necessity: h3 holds, additivity breaks
    add("h3:abelian_inverse", "z -> 1/z satisfies h3 on purely abelian algebras", "pass",
        (lambda c: _run_single_hypothesis(c, P.AbelianInverse(VNAlgebra((1,))), "h3", "h3:abelian_inverse")))
    add("additivity:abelian_inverse", "z -> 1/z is not additive (Phi(2) = 1/2 != 2)", "fail",
        (lambda c: _run_additivity(c, P.AbelianInverse, "additivity:abelian_inverse")))
    add("h3:abelian_zabsz", "z -> z|z| satisfies h3 on purely abelian algebras", "pass",
        (lambda c: _run_single_hypothesis(c, P.AbelianZAbsZ(VNAlgebra((1,))), "h3", "h3:abelian_zabsz")))
    add("additivity:abelian_zabsz", "z -> z|z| is not additive (Phi(2) = 4 != 2)", "fail",
        (lambda c: _run_additivity(c, P.AbelianZAbsZ, "additivity:abelian_zabsz")))

    return {p.pid: p for p in props}


REGISTRY = build_registry()


class UnknownProperty(KeyError):
    pass


def select(selection) -> list:
    """Resolve 'all' or an iterable of ids into registry entries."""
    if selection == "all":
        return list(REGISTRY.values())
    out = []
    for pid in selection:
        if pid not in REGISTRY:
            raise UnknownProperty(pid)
        out.append(REGISTRY[pid])
    if not out:
        raise UnknownProperty("empty selection")
    return out


def run_suite(cfg: SuiteConfig, selection="all") -> dict:
    """Run the selected properties; deterministic given (cfg, selection)."""
    results = []
    all_ok = True
    for prop in select(selection):
        reports = prop.run(cfg)
        observed = all(r.passed for r in reports)
        ok = observed if prop.expect == "pass" else not observed
        all_ok = all_ok and ok
        results.append(
            {
                "property_id": prop.pid,
                "description": prop.description,
                "expected_outcome": prop.expect,
                "observed_pass": observed,
                "ok": ok,
                "reports": [report_to_json(r) for r in reports],
            }
        )
    return {
        "seed": int(cfg.seed),
        "config": {
            "lambda_grid": [float(l) for l in cfg.lambda_grid],
            "block_profiles": [list(p) for p in cfg.block_profiles],
            "trials_per_property": int(cfg.trials_per_property),
            "eq_tol": cfg.tol.eq_tol,
            "rank_tol": cfg.tol.rank_tol,
        },
        "results": results,
        "all_ok": all_ok,
    }
