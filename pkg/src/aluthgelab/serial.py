"""JSON forms for matrices, algebra elements, maps, and trial reports.

Pure in-memory converters; all file I/O lives in the CLI layer.  Output
dictionaries use only JSON-native types and sorted, stable layouts so that
serialized reports are byte-reproducible.
"""

from __future__ import annotations

import numpy as np

from .algebra import AlgElem, VNAlgebra
from .linalg import as_matrix


class SerializationError(ValueError):
    pass


def cmatrix_to_json(m) -> dict:
    """{"rows": n, "cols": m, "re": [...], "im": [...]} row-major."""
    a = as_matrix(m)
    return {
        "rows": int(a.shape[0]),
        "cols": int(a.shape[1]),
        "re": [float(x) for x in a.real.ravel()],
        "im": [float(x) for x in a.imag.ravel()],
    }


def cmatrix_from_json(d) -> np.ndarray:
    try:
        rows, cols = int(d["rows"]), int(d["cols"])
        re = np.asarray(d["re"], dtype=np.float64)
        im = np.asarray(d["im"], dtype=np.float64)
    except (KeyError, TypeError, ValueError) as exc:
        raise SerializationError(f"bad CMatrix object: {exc}") from exc
    if rows < 0 or cols < 0 or re.size != rows * cols or im.size != rows * cols:
        raise SerializationError("re/im lengths must equal rows*cols")
    return (re + 1j * im).reshape(rows, cols)


def algelem_to_json(a: AlgElem) -> dict:
    """{"block_dims": [...], "blocks": [CMatrix, ...]}."""
    return {
        "block_dims": [int(n) for n in a.algebra.block_dims],
        "blocks": [cmatrix_to_json(b) for b in a.blocks],
    }


def algelem_from_json(d) -> AlgElem:
    try:
        dims = [int(n) for n in d["block_dims"]]
        blocks = [cmatrix_from_json(b) for b in d["blocks"]]
    except (KeyError, TypeError) as exc:
        raise SerializationError(f"bad AlgElem object: {exc}") from exc
    alg = VNAlgebra(tuple(dims))
    if len(blocks) != len(dims):
        raise SerializationError("blocks count must match block_dims")
    for n, b in zip(dims, blocks):
        if b.shape != (n, n):
            raise SerializationError(f"block of shape {b.shape} does not match dim {n}")
    return alg.element(blocks)


def _complex_json(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


def map_to_json(phi) -> dict:
    """Serializable description of a constructible preserver map."""
    from . import preservers as P

    if isinstance(phi, (P.UnitaryConj, P.ConjLinearConj)):
        return {"kind": phi.kind, "v": algelem_to_json(phi.v)}
    if isinstance(phi, P.TransposeConj):
        return {"kind": phi.kind, "v": algelem_to_json(phi.v), "conjugate": phi.conjugate}
    if isinstance(phi, P.ExceptionalI2):
        return {
            "kind": phi.kind,
            "c": _complex_json(phi.c),
            "v": algelem_to_json(phi.v),
            "normalized_trace": phi.normalized_trace,
        }
    if isinstance(phi, P.ScalarMultiple):
        return {"kind": phi.kind, "c": _complex_json(phi.c), "inner": map_to_json(phi.inner)}
    if isinstance(phi, P.CentralSplit):
        return {
            "kind": phi.kind,
            "p_c": algelem_to_json(phi.p_c),
            "linear_part": map_to_json(phi.linear_part),
            "conj_part": map_to_json(phi.conj_part),
        }
    if isinstance(phi, (P.AbelianInverse, P.AbelianZAbsZ)):
        return {"kind": phi.kind, "block_dims": list(phi.domain.block_dims)}
    if isinstance(phi, P.Composed):
        return {"kind": phi.kind, "maps": [map_to_json(m) for m in phi.maps]}
    raise SerializationError(f"cannot serialize map of kind {getattr(phi, 'kind', '?')!r}")


def map_from_json(d):
    from . import preservers as P

    try:
        kind = d["kind"]
    except (KeyError, TypeError) as exc:
        raise SerializationError("map object needs a 'kind' key") from exc
    if kind == "unitary_conj":
        return P.UnitaryConj(algelem_from_json(d["v"]))
    if kind == "conj_linear_conj":
        return P.ConjLinearConj(algelem_from_json(d["v"]))
    if kind == "transpose_conj":
        return P.TransposeConj(algelem_from_json(d["v"]), conjugate=bool(d.get("conjugate", False)))
    if kind == "exceptional_i2":
        c = complex(d["c"]["re"], d["c"]["im"])
        return P.ExceptionalI2(c, algelem_from_json(d["v"]), normalized_trace=bool(d.get("normalized_trace", False)))
    if kind == "scalar_multiple":
        c = complex(d["c"]["re"], d["c"]["im"])
        return P.ScalarMultiple(c, map_from_json(d["inner"]))
    if kind == "central_split":
        return P.CentralSplit(
            algelem_from_json(d["p_c"]),
            map_from_json(d["linear_part"]),
            map_from_json(d["conj_part"]),
        )
    if kind == "abelian_inverse":
        return P.AbelianInverse(VNAlgebra(tuple(int(n) for n in d["block_dims"])))
    if kind == "abelian_zabsz":
        return P.AbelianZAbsZ(VNAlgebra(tuple(int(n) for n in d["block_dims"])))
    if kind == "composed":
        return P.Composed([map_from_json(m) for m in d["maps"]])
    raise SerializationError(f"unknown map kind {kind!r}")


def report_to_json(report) -> dict:
    """TrialReport as a plain dict (keys later sorted by the JSON writer)."""
    return {
        "property_id": report.property_id,
        "n_trials": int(report.n_trials),
        "max_residual": float(report.max_residual),
        "passed": bool(report.passed),
        "seed": int(report.seed),
        "counterexample": report.counterexample,
        "extra": dict(report.extra),
    }
