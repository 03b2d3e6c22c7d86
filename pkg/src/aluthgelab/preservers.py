"""Constructible preserver maps and black-box checkers for them.

A preserver map is any bijection of the algebra exposing ``apply``; the
classes below build the named instances (unitary conjugations, their
conjugate-linear and transposed variants, the exceptional 2x2 form, the
central-split hybrid and the abelian scalar counterexamples).  Checkers
consume any such object, so user-composed bijections can be probed too.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    AlgElem,
    VNAlgebra,
    elem_eq,
    elem_residual,
    is_central,
    is_minimal_projection,
    is_projection,
    jordan,
    proj_leq,
    proj_orthogonal,
)
from .aluthge import Verdict, aluthge, aluthge_matrix, validate_lambda
from .linalg import DEFAULT_TOL, TolerancePolicy, as_matrix, frob
from . import sampling


class NotMinimal(ValueError):
    pass


class NotScalar(ValueError):
    pass


# --- the map classes ------------------------------------------------------

class PreserverMap:
    """Base class: an evaluable bijection between two block algebras."""

    kind = "custom"

    def __init__(self, domain: VNAlgebra, codomain: VNAlgebra | None = None):
        self.domain = domain
        self.codomain = codomain if codomain is not None else domain

    def apply(self, a: AlgElem) -> AlgElem:
        raise NotImplementedError

    def inverse(self) -> "PreserverMap":
        raise NotImplementedError(f"{self.kind} does not expose an inverse")

    def central_linear_projection(self) -> AlgElem | None:
        """The central projection on which the map acts complex-linearly."""
        return None


def _require_unitary(v: AlgElem, tol: TolerancePolicy) -> AlgElem:
    one = v.algebra.identity()
    if not (elem_eq(v @ v.adjoint(), one, tol) and elem_eq(v.adjoint() @ v, one, tol)):
        raise ValueError("v must be unitary")
    return v


class UnitaryConj(PreserverMap):
    """a -> v a v* (a *-isomorphism)."""

    kind = "unitary_conj"

    def __init__(self, v: AlgElem, tol: TolerancePolicy = DEFAULT_TOL):
        super().__init__(v.algebra)
        self.v = _require_unitary(v, tol)

    def apply(self, a):
        return self.v @ a @ self.v.adjoint()

    def inverse(self):
        return UnitaryConj(self.v.adjoint())

    def central_linear_projection(self):
        return self.domain.identity()


class ConjLinearConj(PreserverMap):
    """a -> v conj(a) v* (a conjugate-linear *-isomorphism)."""

    kind = "conj_linear_conj"

    def __init__(self, v: AlgElem, tol: TolerancePolicy = DEFAULT_TOL):
        super().__init__(v.algebra)
        self.v = _require_unitary(v, tol)

    def apply(self, a):
        return self.v @ a.conj() @ self.v.adjoint()

    def inverse(self):
        return ConjLinearConj(self.v.transpose())

    def central_linear_projection(self):
        return self.domain.zero()


class TransposeConj(PreserverMap):
    """a -> v a^t v* (or v conj(a)^t v* = v a* v* with the conjugate flag).

    These are *-anti-automorphisms.  They preserve Jordan products but do
    NOT commute with Delta_lam, so they fail every product hypothesis; they
    exist here as discriminator instances.
    """

    kind = "transpose_conj"

    def __init__(self, v: AlgElem, conjugate: bool = False, tol: TolerancePolicy = DEFAULT_TOL):
        super().__init__(v.algebra)
        self.v = _require_unitary(v, tol)
        self.conjugate = bool(conjugate)

    def apply(self, a):
        core = a.adjoint() if self.conjugate else a.transpose()
        return self.v @ core @ self.v.adjoint()

    def inverse(self):
        # a -> v a^t v* inverts with v^t; a -> v a* v* inverts with v*
        w = self.v.adjoint() if self.conjugate else self.v.transpose()
        return TransposeConj(w, conjugate=self.conjugate)


class ExceptionalI2(PreserverMap):
    """The exceptional 2x2 linear preserver a -> c (v a^t v* - Tr(a) 1).

    With the unnormalized trace (Tr(1) = 2) the map is a linear bijection
    commuting with Delta_lam for |c| = 1; with the trace normalized by the
    dimension it kills scalars and is not even injective.  Both variants
    are constructible so the gap can be probed.
    """

    kind = "exceptional_i2"

    def __init__(
        self,
        c: complex,
        v: AlgElem,
        normalized_trace: bool = False,
        tol: TolerancePolicy = DEFAULT_TOL,
    ):
        if v.algebra.block_dims != (2,):
            raise ValueError("the exceptional map lives on the single-block algebra M_2")
        if c == 0:
            raise ValueError("c must be nonzero")
        super().__init__(v.algebra)
        self.c = complex(c)
        self.v = _require_unitary(v, tol)
        self.normalized_trace = bool(normalized_trace)

    def apply(self, a):
        tr = a.trace()
        if self.normalized_trace:
            tr = tr / 2.0
        return self.c * (self.v @ a.transpose() @ self.v.adjoint() - tr * self.domain.identity())

    def inverse(self):
        if self.normalized_trace:
            raise NotImplementedError("the normalized-trace variant is not injective")
        # a -> a^t - Tr(a) 1 is an involution on M_2
        outer = UnitaryConj(self.v)
        me = self

        class _Inv(PreserverMap):
            kind = "exceptional_i2_inverse"

            def apply(self, b):
                core = outer.inverse().apply((1.0 / me.c) * b)
                return core.transpose() - core.trace() * self.domain.identity()

        return _Inv(self.domain)


class ScalarMultiple(PreserverMap):
    """a -> c * inner(a) for a nonzero scalar c."""

    kind = "scalar_multiple"

    def __init__(self, c: complex, inner: PreserverMap):
        if c == 0:
            raise ValueError("c must be nonzero")
        super().__init__(inner.domain, inner.codomain)
        self.c = complex(c)
        self.inner = inner

    def apply(self, a):
        return self.c * self.inner.apply(a)


class CentralSplit(PreserverMap):
    """Linear on p_c M, conjugate-linear on (1 - p_c) M.

    p_c must be a central projection; the two parts are preserver maps on
    the full algebra and are applied to the respective central summands.
    """

    kind = "central_split"

    def __init__(
        self,
        p_c: AlgElem,
        linear_part: PreserverMap,
        conj_part: PreserverMap,
        tol: TolerancePolicy = DEFAULT_TOL,
    ):
        if not (is_projection(p_c, tol) and is_central(p_c, tol)):
            raise ValueError("p_c must be a central projection")
        if linear_part.domain.block_dims != conj_part.domain.block_dims:
            raise ValueError("the two parts must share a domain")
        super().__init__(linear_part.domain, linear_part.codomain)
        self.p_c = p_c
        self.linear_part = linear_part
        self.conj_part = conj_part

    def apply(self, a):
        comp = a.algebra.identity() - self.p_c
        return self.linear_part.apply(a @ self.p_c) + self.conj_part.apply(a @ comp)

    def inverse(self):
        q = self.apply(self.p_c)
        return CentralSplit(q, self.linear_part.inverse(), self.conj_part.inverse())

    def central_linear_projection(self):
        return self.p_c


def _require_abelian(alg: VNAlgebra) -> VNAlgebra:
    if any(n != 1 for n in alg.block_dims):
        raise ValueError("this map is defined on purely abelian algebras (all blocks 1x1)")
    return alg


class AbelianInverse(PreserverMap):
    """z -> 1/z (0 -> 0) on every 1x1 block; multiplicative but not additive."""

    kind = "abelian_inverse"

    def __init__(self, alg: VNAlgebra):
        super().__init__(_require_abelian(alg))

    def apply(self, a):
        out = []
        for blk in a.blocks:
            z = complex(blk[0, 0])
            out.append([[0.0 if z == 0 else 1.0 / z]])
        return self.domain.element(out)

    def inverse(self):
        return AbelianInverse(self.domain)


class AbelianZAbsZ(PreserverMap):
    """z -> z |z| on every 1x1 block; multiplicative-with-* but not additive."""

    kind = "abelian_zabsz"

    def __init__(self, alg: VNAlgebra):
        super().__init__(_require_abelian(alg))

    def apply(self, a):
        return self.domain.element([[[complex(b[0, 0]) * abs(complex(b[0, 0]))]] for b in a.blocks])

    def inverse(self):
        outer = self

        class _Inv(PreserverMap):
            kind = "abelian_zabsz_inverse"

            def apply(self, a):
                out = []
                for blk in a.blocks:
                    w = complex(blk[0, 0])
                    out.append([[0.0 if w == 0 else w / np.sqrt(abs(w))]])
                return outer.domain.element(out)

        return _Inv(outer.domain)


class Composed(PreserverMap):
    """Composition, first map applied first."""

    kind = "composed"

    def __init__(self, maps):
        maps = list(maps)
        if not maps:
            raise ValueError("need at least one map")
        super().__init__(maps[0].domain, maps[-1].codomain)
        self.maps = maps

    def apply(self, a):
        for m in self.maps:
            a = m.apply(a)
        return a

    def inverse(self):
        return Composed([m.inverse() for m in reversed(self.maps)])


class FunctionMap(PreserverMap):
    """Wrap an arbitrary callable bijection for black-box checking."""

    def __init__(self, domain, fn, codomain=None, kind="custom", inverse_fn=None):
        super().__init__(domain, codomain)
        self.kind = kind
        self.fn = fn
        self.inverse_fn = inverse_fn

    def apply(self, a):
        return self.fn(a)

    def inverse(self):
        if self.inverse_fn is None:
            raise NotImplementedError("no inverse supplied")
        return FunctionMap(self.codomain, self.inverse_fn, self.domain, kind=self.kind + "_inverse")


# --- reports --------------------------------------------------------------

@dataclass(frozen=True)
class TrialReport:
    """Verdict of one property over a batch of seeded trials."""

    property_id: str
    n_trials: int
    max_residual: float
    passed: bool
    seed: int
    counterexample: dict | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.passed and self.counterexample is None:
            raise ValueError("a failing report must carry a counterexample payload")


def _payload(**kwargs) -> dict:
    from .serial import algelem_to_json  # deferred: serial has no import-time deps on us

    out = {}
    for key, value in kwargs.items():
        if isinstance(value, AlgElem):
            out[key] = algelem_to_json(value)
        elif isinstance(value, complex):
            out[key] = {"re": value.real, "im": value.imag}
        elif isinstance(value, np.ndarray):
            from .serial import cmatrix_to_json

            out[key] = cmatrix_to_json(value)
        else:
            out[key] = value
    return out


class _Tracker:
    """Accumulates the worst trial of a property run."""

    def __init__(self, property_id: str, seed: int, threshold: float):
        self.property_id = property_id
        self.seed = seed
        self.threshold = threshold
        self.max_residual = 0.0
        self.worst = None
        self.n = 0
        self.extra = {}

    def record(self, residual: float, **payload):
        self.n += 1
        if residual >= self.max_residual:
            self.max_residual = float(residual)
            if payload:
                self.worst = payload

    def report(self, passed=None, **extra) -> TrialReport:
        if passed is None:
            passed = self.max_residual < self.threshold
        ce = None
        if not passed:
            ce = _payload(**(self.worst or {"note": "no payload recorded"}))
        merged = dict(self.extra)
        merged.update(extra)
        return TrialReport(
            property_id=self.property_id,
            n_trials=self.n,
            max_residual=self.max_residual,
            passed=passed,
            seed=self.seed,
            counterexample=ce,
            extra=merged,
        )


def _tracker(property_id: str, seed: int, label: str, tol: TolerancePolicy, factor: float = 10.0):
    sub = sampling.subseed(seed, label)
    rng = sampling.rng_for(seed, label)
    return _Tracker(property_id, sub, factor * tol.eq_tol), rng


# --- hypothesis checks ----------------------------------------------------

_PRODUCTS = {
    "h1": lambda a, b: a @ b,
    "h2": lambda a, b: jordan(a, b),
    "h3": lambda a, b: a @ b.adjoint(),
    "h4": lambda a, b: jordan(a, b.adjoint()),
}


def check_hypothesis(
    phi: PreserverMap,
    which: str,
    lam: float,
    seed: int,
    n_trials: int = 200,
    tol: TolerancePolicy = DEFAULT_TOL,
    sampler=None,
    property_id: str | None = None,
) -> TrialReport:
    """Max residual of Phi(Delta(a . b)) = Delta(Phi(a) . Phi(b)) over trials.

    For h1/h2 the side condition Phi(a*) = Phi(a)* is checked as well.
    Pass iff the max residual stays below 10 * eq_tol.
    """
    if which not in _PRODUCTS:
        raise ValueError(f"unknown hypothesis {which!r}")
    lam = validate_lambda(lam)
    product = _PRODUCTS[which]
    sampler = sampler or sampling.random_element
    pid = property_id or f"{which}:{phi.kind}:lambda={lam}"
    tracker, rng = _tracker(pid, seed, pid, tol)
    for _ in range(n_trials):
        a = sampler(rng, phi.domain)
        b = sampler(rng, phi.domain)
        fa, fb = phi.apply(a), phi.apply(b)
        lhs = phi.apply(aluthge(product(a, b), lam, tol))
        rhs = aluthge(product(fa, fb), lam, tol)
        res = (lhs - rhs).norm() / max(1.0, lhs.norm())
        if which in ("h1", "h2"):
            adj = (phi.apply(a.adjoint()) - fa.adjoint()).norm() / max(1.0, fa.norm())
            res = max(res, adj)
        tracker.record(res, a=a, b=b, **{"lambda": lam})
    return tracker.report()


# --- Proposition "basic properties" (a)-(k) -------------------------------

def _nested_projections(rng, alg: VNAlgebra, tol: TolerancePolicy):
    """(p, q) with p <= q, built from a shared orthonormal basis per block."""
    pb, qb = [], []
    for n in alg.block_dims:
        w = sampling.random_unitary(rng, n)
        r2 = int(rng.integers(0, n + 1))
        r1 = int(rng.integers(0, r2 + 1))
        pb.append(w[:, :r1] @ w[:, :r1].conj().T)
        qb.append(w[:, :r2] @ w[:, :r2].conj().T)
    return alg.element(pb), alg.element(qb)


def _orthogonal_family(rng, alg: VNAlgebra, parts: int):
    """Mutually orthogonal projections summing to at most the identity."""
    fam = [[] for _ in range(parts)]
    for n in alg.block_dims:
        w = sampling.random_unitary(rng, n)
        cuts = sorted(int(rng.integers(0, n + 1)) for _ in range(parts - 1))
        bounds = [0] + cuts + [n]
        for i in range(parts):
            cols = w[:, bounds[i]:bounds[i + 1]]
            fam[i].append(cols @ cols.conj().T)
    return [alg.element(blocks) for blocks in fam]


def check_basic_properties(
    phi: PreserverMap,
    hypothesis: str,
    lam: float,
    seed: int,
    n_trials: int = 50,
    tol: TolerancePolicy = DEFAULT_TOL,
):
    """The 11-item consequence suite for a map satisfying h.3 or h.4."""
    if hypothesis not in ("h3", "h4"):
        raise ValueError("hypothesis must be 'h3' or 'h4'")
    lam = validate_lambda(lam)
    alg = phi.domain
    reports = []

    def run(item, fn, trials=n_trials):
        pid = f"basic:{item}:{phi.kind}"
        tracker, rng = _tracker(pid, seed, pid + f":{lam}", tol)
        fn(tracker, rng, trials)
        reports.append(tracker.report())

    def item_a(tr, rng, trials):
        tr.record(phi.apply(alg.zero()).norm())

    def item_b(tr, rng, trials):
        for _ in range(trials):
            a = sampling.random_element(rng, alg)
            fa = phi.apply(a)
            if hypothesis == "h3":
                lhs, rhs = phi.apply(a @ a.adjoint()), fa @ fa.adjoint()
            else:
                lhs, rhs = phi.apply(jordan(a, a.adjoint())), jordan(fa, fa.adjoint())
            tr.record(elem_residual(lhs, rhs), a=a)

    def item_c(tr, rng, trials):
        for _ in range(trials):
            p = sampling.random_projection(rng, alg, tol)
            fp = phi.apply(p)
            res = max(elem_residual(fp @ fp, fp), elem_residual(fp, fp.adjoint()))
            tr.record(res, p=p)

    def item_d(tr, rng, trials):
        for _ in range(trials):
            p, q = _nested_projections(rng, alg, tol)
            fp, fq = phi.apply(p), phi.apply(q)
            tr.record(elem_residual(fp @ fq, fp), p=p, q=q)
            p2 = sampling.random_projection(rng, alg, tol)
            q2 = sampling.random_projection(rng, alg, tol)
            if not proj_leq(p2, q2, tol):
                tr.record(1.0 if proj_leq(phi.apply(p2), phi.apply(q2), tol) else 0.0, p=p2, q=q2)

    def item_e(tr, rng, trials):
        tr.record(elem_residual(phi.apply(alg.identity()), alg.identity()))

    def item_f(tr, rng, trials):
        for _ in range(trials):
            fam = _orthogonal_family(rng, alg, 2)
            p, q = fam[0], fam[1]
            fp, fq = phi.apply(p), phi.apply(q)
            tr.record((fp @ fq).norm() / max(1.0, fp.norm() * fq.norm()), p=p, q=q)
            p2 = sampling.random_projection(rng, alg, tol)
            q2 = sampling.random_projection(rng, alg, tol)
            if not proj_orthogonal(p2, q2, tol):
                tr.record(
                    1.0 if proj_orthogonal(phi.apply(p2), phi.apply(q2), tol) else 0.0, p=p2, q=q2
                )

    def item_g(tr, rng, trials):
        inv = None
        try:
            inv = phi.inverse()
        except NotImplementedError:
            pass
        for _ in range(trials):
            p = sampling.random_minimal_projection(rng, alg)
            tr.record(0.0 if is_minimal_projection(phi.apply(p), tol) else 1.0, p=p)
            if inv is not None:
                q = sampling.random_minimal_projection(rng, phi.codomain)
                tr.record(0.0 if is_minimal_projection(inv.apply(q), tol) else 1.0, q=q)

    def item_h(tr, rng, trials):
        for _ in range(trials):
            fam = _orthogonal_family(rng, alg, 3)
            total = fam[0] + fam[1] + fam[2]
            lhs = phi.apply(total)
            rhs = phi.apply(fam[0]) + phi.apply(fam[1]) + phi.apply(fam[2])
            tr.record(elem_residual(lhs, rhs))

    def item_i(tr, rng, trials):
        for _ in range(trials):
            p, q = _nested_projections(rng, alg, tol)
            tr.record(elem_residual(phi.apply(q - p), phi.apply(q) - phi.apply(p)), p=p, q=q)

    def item_j(tr, rng, trials):
        for _ in range(trials):
            a = sampling.random_element(rng, alg)
            tr.record(elem_residual(phi.apply(aluthge(a, lam, tol)), aluthge(phi.apply(a), lam, tol)), a=a)

    def item_k(tr, rng, trials):
        for _ in range(trials):
            a = sampling.random_element(rng, alg)
            lhs = phi.apply(aluthge(a.adjoint(), lam, tol))
            rhs = aluthge(phi.apply(a).adjoint(), lam, tol)
            tr.record(elem_residual(lhs, rhs), a=a)

    for item, fn in [
        ("a", item_a), ("b", item_b), ("c", item_c), ("d", item_d), ("e", item_e),
        ("f", item_f), ("g", item_g), ("h", item_h), ("i", item_i), ("j", item_j),
        ("k", item_k),
    ]:
        run(item, fn)
    return reports


# --- hermitian-side consequences ------------------------------------------

def check_hermitian_consequences(
    phi: PreserverMap,
    seed: int,
    n_trials: int = 50,
    tol: TolerancePolicy = DEFAULT_TOL,
):
    """Hermitian preservation, Jordan multiplicativity, compressions,
    centrality, and the p_c branch identities for conjugation behavior."""
    alg = phi.domain
    reports = []

    def run(item, fn):
        pid = f"herm:{item}:{phi.kind}"
        tracker, rng = _tracker(pid, seed, pid, tol)
        fn(tracker, rng)
        reports.append(tracker.report())

    def sa_preserved(tr, rng):
        for _ in range(n_trials):
            x = sampling.random_hermitian(rng, alg)
            fx = phi.apply(x)
            tr.record(elem_residual(fx, fx.adjoint()), x=x)

    def jordan_mult(tr, rng):
        for _ in range(n_trials):
            x = sampling.random_hermitian(rng, alg)
            y = sampling.random_hermitian(rng, alg)
            tr.record(elem_residual(phi.apply(jordan(x, y)), jordan(phi.apply(x), phi.apply(y))), x=x, y=y)

    def negation(tr, rng):
        for _ in range(n_trials):
            x = sampling.random_hermitian(rng, alg)
            tr.record(elem_residual(phi.apply(-x), -phi.apply(x)), x=x)
            z = 1j * x
            tr.record(elem_residual(phi.apply(-z), -phi.apply(z)), x=z)

    def compression(tr, rng):
        for _ in range(n_trials):
            p = sampling.random_projection(rng, alg, tol)
            x = sampling.random_hermitian(rng, alg)
            for b in (x, 1j * x):
                lhs = phi.apply(p @ b @ p)
                rhs = phi.apply(p) @ phi.apply(b) @ phi.apply(p)
                tr.record(elem_residual(lhs, rhs), p=p, b=b)

    def center(tr, rng):
        for _ in range(n_trials):
            coefs = sampling.random_matrix(rng, len(alg.block_dims), 1).ravel()
            a = alg.element([c * np.eye(n) for c, n in zip(coefs, alg.block_dims)])
            tr.record(0.0 if is_central(phi.apply(a), tol) else 1.0, a=a)

    def pc_branches(tr, rng):
        p_c = phi.central_linear_projection()
        if p_c is None:
            tr.extra["vacuous"] = True
            tr.record(0.0)
            return
        comp = alg.identity() - p_c
        for _ in range(n_trials):
            x = sampling.random_hermitian(rng, alg)
            xin = x @ p_c
            xout = x @ comp
            tr.record(elem_residual(phi.apply(1j * xin), 1j * phi.apply(xin)), x=xin)
            tr.record(elem_residual(phi.apply(1j * xout), -1j * phi.apply(xout)), x=xout)

    for item, fn in [
        ("sa_preserved", sa_preserved),
        ("jordan_mult", jordan_mult),
        ("negation", negation),
        ("compression", compression),
        ("center", center),
        ("pc_branches", pc_branches),
    ]:
        run(item, fn)
    return reports


# --- scalar map extraction ------------------------------------------------

DEFAULT_SCALAR_GRID = (
    0.0, 1.0, -1.0, 1j, -1j, 2.0, -3.0, 0.5,
    1 + 1j, 1 - 1j, -2 + 3j, 0.25j, 3 - 4j, -0.75, 1.5j, 2 - 1j,
)


@dataclass(frozen=True)
class ScalarMap:
    """Sampled values of h with Phi(alpha 1) = h(alpha) 1 and their class."""

    pairs: tuple
    classification: str  # "identity" | "conjugation" | "other"


def scalar_coefficient(a: AlgElem, tol: TolerancePolicy = DEFAULT_TOL) -> complex:
    """The beta with a = beta * 1, or NotScalar."""
    total_dim = sum(a.algebra.block_dims)
    beta = a.trace() / total_dim
    if not elem_eq(a, a.algebra.scalar(beta), tol):
        raise NotScalar("element is not a scalar multiple of the identity")
    return complex(beta)


def h_value(phi: PreserverMap, alpha: complex, tol: TolerancePolicy = DEFAULT_TOL) -> complex:
    return scalar_coefficient(phi.apply(phi.domain.scalar(alpha)), tol)


def extract_scalar_map(
    phi: PreserverMap,
    grid=DEFAULT_SCALAR_GRID,
    tol: TolerancePolicy = DEFAULT_TOL,
) -> ScalarMap:
    """Evaluate alpha -> h(alpha) on the grid and classify it.

    The identity/conjugation dichotomy is a theorem only when the domain
    has a block of dimension >= 2; on abelian algebras "other" is a
    legitimate outcome.
    """
    pairs = []
    for alpha in grid:
        alpha = complex(alpha)
        pairs.append((alpha, h_value(phi, alpha, tol)))

    def close(x, y):
        return abs(x - y) <= tol.eq_tol * max(1.0, abs(x), abs(y))

    if all(close(h, alpha) for alpha, h in pairs):
        cls = "identity"
    elif all(close(h, alpha.conjugate()) for alpha, h in pairs):
        cls = "conjugation"
    else:
        cls = "other"
    return ScalarMap(pairs=tuple(pairs), classification=cls)


def pure_state_value(p: AlgElem, a: AlgElem, tol: TolerancePolicy = DEFAULT_TOL) -> complex:
    """The scalar phi_p(a) with p a p = phi_p(a) p, for minimal p."""
    if not is_minimal_projection(p, tol):
        raise NotMinimal("p must be a minimal projection")
    num = (p @ a @ p).trace()
    den = p.trace()
    return complex(num / den)


def check_compression_identity(
    phi: PreserverMap,
    lam: float,
    seed: int,
    n_trials: int = 200,
    tol: TolerancePolicy = DEFAULT_TOL,
) -> TrialReport:
    """Phi(p) Phi(a) Phi(p) = h(phi_p(a)) Phi(p) over minimal p and random a."""
    validate_lambda(lam)
    pid = f"compression_identity:{phi.kind}"
    tracker, rng = _tracker(pid, seed, pid, tol)
    alg = phi.domain
    for _ in range(n_trials):
        p = sampling.random_minimal_projection(rng, alg)
        a = sampling.random_element(rng, alg)
        fp = phi.apply(p)
        lhs = fp @ phi.apply(a) @ fp
        rhs = h_value(phi, pure_state_value(p, a, tol), tol) * fp
        tracker.record(elem_residual(lhs, rhs), p=p, a=a)
    return tracker.report()


# --- the M_2 technical lemma ----------------------------------------------

def check_m2_lemma(
    a,
    p_hat,
    mu: complex,
    lam: float,
    tol: TolerancePolicy = DEFAULT_TOL,
) -> Verdict:
    """If Delta(a(1-p)) = mu (1-p) and Delta((1-p) a*) = conj(mu) (1-p),
    then the off-corner p a (1-p) must vanish.  Vacuous when a premise
    fails (reported via the `vacuous` flag)."""
    lam = validate_lambda(lam)
    if lam == 0.0:
        raise ValueError("the lemma requires lambda > 0")
    if mu == 0:
        raise ValueError("mu must be nonzero")
    a = as_matrix(a)
    p = as_matrix(p_hat)
    if a.shape != (2, 2) or p.shape != (2, 2):
        raise ValueError("the lemma lives in M_2")
    comp = np.eye(2) - p
    scale = max(1.0, frob(a), abs(mu))
    res1 = frob(aluthge_matrix(a @ comp, lam, tol) - mu * comp) / scale
    res2 = frob(aluthge_matrix(comp @ a.conj().T, lam, tol) - np.conj(mu) * comp) / scale
    premises = res1 <= tol.eq_tol and res2 <= tol.eq_tol
    corner = frob(p @ a @ comp) / max(1.0, frob(a))
    if not premises:
        return Verdict(passed=True, vacuous=True, residuals={"premise1": res1, "premise2": res2, "corner": corner})
    return Verdict(
        passed=corner <= 10.0 * tol.eq_tol,
        residuals={"premise1": res1, "premise2": res2, "corner": corner},
    )


# --- orthogonal scalar additivity -----------------------------------------

def check_orthogonal_scalar_additivity(
    phi: PreserverMap,
    seed: int,
    n_trials: int = 200,
    tol: TolerancePolicy = DEFAULT_TOL,
) -> TrialReport:
    """Phi(alpha p + beta q) = Phi(alpha p) + Phi(beta q) over orthogonal
    minimal pairs, plus the scaling Phi(alpha p) = h(alpha) Phi(p)."""
    pid = f"orthogonal_scalar_additivity:{phi.kind}"
    tracker, rng = _tracker(pid, seed, pid, tol)
    alg = phi.domain
    for _ in range(n_trials):
        p, q = sampling.random_orthogonal_minimal_pair(rng, alg)
        alpha = 2.0 * complex(sampling.random_matrix(rng, 1, 1)[0, 0])
        beta = 2.0 * complex(sampling.random_matrix(rng, 1, 1)[0, 0])
        lhs = phi.apply(alpha * p + beta * q)
        rhs = phi.apply(alpha * p) + phi.apply(beta * q)
        tracker.record(elem_residual(lhs, rhs), p=p, q=q, alpha=alpha, beta=beta)
        # branch-dependent scaling: Phi(alpha p) must be a multiple of Phi(p)
        fp = phi.apply(p)
        fap = phi.apply(alpha * p)
        factor = complex((fp @ fap).trace() / fp.trace())
        tracker.record(elem_residual(fap, factor * fp), p=p, alpha=alpha)
        try:
            expected = h_value(phi, alpha, tol)
            ok = abs(factor - expected) <= 10.0 * tol.eq_tol * max(1.0, abs(alpha))
        except NotScalar:
            ok = min(abs(factor - alpha), abs(factor - alpha.conjugate())) <= 10.0 * tol.eq_tol * max(
                1.0, abs(alpha)
            )
        tracker.record(0.0 if ok else 1.0, p=p, alpha=alpha)
    return tracker.report()


# --- the BMN linear-preserver test ----------------------------------------

def check_bmn_commutation(
    phi: PreserverMap,
    lam: float,
    seed: int,
    n_trials: int = 200,
    tol: TolerancePolicy = DEFAULT_TOL,
) -> TrialReport:
    """Residual of the linear preserver condition Phi(Delta(a)) = Delta(Phi(a))."""
    lam = validate_lambda(lam)
    pid = f"bmn_commutation:{phi.kind}:lambda={lam}"
    tracker, rng = _tracker(pid, seed, pid, tol)
    for _ in range(n_trials):
        a = sampling.random_element(rng, phi.domain)
        lhs = phi.apply(aluthge(a, lam, tol))
        rhs = aluthge(phi.apply(a), lam, tol)
        tracker.record(elem_residual(lhs, rhs), a=a)
    return tracker.report()
