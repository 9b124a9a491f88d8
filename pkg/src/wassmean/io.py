"""JSON interchange for matrices, ensembles, positive maps, suite plans and
reports.

Matrix files are ``{"dim": m, "re": [[...]], "im": [[...]]}`` with ``im``
optional (zero when absent), row-major, IEEE-754 doubles. Hermitian symmetry
is validated on load with absolute tolerance 1e-12 and then enforced by
symmetrization. Validation failures raise :class:`FormatError` naming the
offending field.
"""

import json

import numpy as np

from .barycenter import Ensemble
from .checks import DEFAULT_CHECKS, SuitePlan
from .hermitian import require_hermitian, require_spd
from .products import PositiveMapSpec, ando_map

HERMITIAN_LOAD_ATOL = 1e-12


class FormatError(ValueError):
    """A JSON document violates the interchange contract."""


def dumps_canonical(payload):
    """Stable serialization: sorted keys, fixed separators, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


def _real_grid(value, dim, name):
    try:
        arr = np.asarray(value, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"{name}: not a numeric grid ({exc})") from None
    if arr.shape != (dim, dim):
        raise FormatError(f"{name}: expected {dim}x{dim} rows, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise FormatError(f"{name}: entries must be finite")
    return arr


def matrix_from_json_dict(doc, name="matrix", spd=True):
    """Parse one matrix document; ``spd=False`` only enforces Hermitian
    symmetry (still symmetrizes)."""
    if not isinstance(doc, dict):
        raise FormatError(f"{name}: expected an object, got {type(doc).__name__}")
    if "dim" not in doc:
        raise FormatError(f"{name}.dim: missing")
    dim = doc["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise FormatError(f"{name}.dim: expected a positive integer, got {dim!r}")
    if "re" not in doc:
        raise FormatError(f"{name}.re: missing")
    re = _real_grid(doc["re"], dim, f"{name}.re")
    if "im" in doc and doc["im"] is not None:
        im = _real_grid(doc["im"], dim, f"{name}.im")
    else:
        im = np.zeros((dim, dim))
    mat = re + 1j * im
    try:
        if spd:
            return require_spd(mat, atol=HERMITIAN_LOAD_ATOL, name=name)
        return require_hermitian(mat, atol=HERMITIAN_LOAD_ATOL, name=name)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def matrix_to_json_dict(mat):
    arr = np.asarray(mat, dtype=np.complex128)
    return {
        "dim": int(arr.shape[0]),
        "re": arr.real.tolist(),
        "im": arr.imag.tolist(),
    }


def ensemble_from_json_dict(doc, name="ensemble"):
    if not isinstance(doc, dict):
        raise FormatError(f"{name}: expected an object, got {type(doc).__name__}")
    for key in ("weights", "matrices"):
        if key not in doc:
            raise FormatError(f"{name}.{key}: missing")
    weights = doc["weights"]
    mats_doc = doc["matrices"]
    if not isinstance(mats_doc, list) or not mats_doc:
        raise FormatError(f"{name}.matrices: expected a non-empty array")
    mats = [
        matrix_from_json_dict(m, name=f"{name}.matrices[{j}]")
        for j, m in enumerate(mats_doc)
    ]
    try:
        return Ensemble(weights=weights, matrices=mats)
    except ValueError as exc:
        raise FormatError(f"{name}.{exc}") from None


def ensemble_to_json_dict(ensemble):
    return {
        "weights": [float(w) for w in ensemble.weights],
        "matrices": [matrix_to_json_dict(ensemble.matrices[j])
                     for j in range(ensemble.size)],
    }


def map_spec_from_json_dict(doc, name="map"):
    if not isinstance(doc, dict):
        raise FormatError(f"{name}: expected an object")
    kind = doc.get("kind")
    if kind == "ando":
        m = doc.get("m")
        if not isinstance(m, int) or m < 1:
            raise FormatError(f"{name}.m: expected a positive integer, got {m!r}")
        return ando_map(m)
    if kind == "isometry":
        if "v_re" not in doc:
            raise FormatError(f"{name}.v_re: missing")
        v_re = np.asarray(doc["v_re"], dtype=np.float64)
        if v_re.ndim != 2:
            raise FormatError(f"{name}.v_re: expected a 2-d grid")
        if "v_im" in doc and doc["v_im"] is not None:
            v_im = np.asarray(doc["v_im"], dtype=np.float64)
            if v_im.shape != v_re.shape:
                raise FormatError(
                    f"{name}.v_im: shape {v_im.shape} != v_re shape {v_re.shape}"
                )
        else:
            v_im = np.zeros_like(v_re)
        try:
            return PositiveMapSpec(kind="isometry", isometry=v_re + 1j * v_im)
        except ValueError as exc:
            raise FormatError(f"{name}: {exc}") from None
    raise FormatError(f"{name}.kind: expected 'isometry' or 'ando', got {kind!r}")


def map_spec_to_json_dict(phi):
    if phi.kind == "ando":
        return {"kind": "ando", "m": phi.target_dim}
    return {
        "kind": "isometry",
        "v_re": phi.isometry.real.tolist(),
        "v_im": phi.isometry.imag.tolist(),
    }


def plan_from_json_dict(doc, name="plan"):
    if not isinstance(doc, dict):
        raise FormatError(f"{name}: expected an object")
    checks = doc.get("checks", "all")
    if checks == "all":
        checks = list(DEFAULT_CHECKS)
    if not isinstance(checks, list) or not all(isinstance(c, str) for c in checks):
        raise FormatError(f"{name}.checks: expected an array of names or 'all'")
    kwargs = {"checks": checks}
    if "seeds" in doc:
        seeds = doc["seeds"]
        if not (isinstance(seeds, list) and len(seeds) == 2):
            raise FormatError(f"{name}.seeds: expected [lo, hi]")
        kwargs["seeds"] = tuple(seeds)
    if "dims" in doc:
        dims = doc["dims"]
        if not (isinstance(dims, list) and dims):
            raise FormatError(f"{name}.dims: expected a non-empty array")
        kwargs["dims"] = tuple(dims)
    if "tol" in doc:
        try:
            kwargs["tol"] = float(doc["tol"])
        except (TypeError, ValueError):
            raise FormatError(f"{name}.tol: expected a number, got {doc['tol']!r}") from None
    try:
        return SuitePlan(**kwargs)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"{name}: {exc}") from None


def plan_to_json_dict(plan):
    return {
        "checks": list(plan.checks),
        "seeds": list(plan.seeds),
        "dims": list(plan.dims),
        "tol": plan.tol,
    }


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None


def load_matrix(path, spd=True):
    return matrix_from_json_dict(_load_json(path), name=str(path), spd=spd)


def save_matrix(path, mat):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_canonical(matrix_to_json_dict(mat)))


def load_ensemble(path):
    return ensemble_from_json_dict(_load_json(path), name=str(path))


def save_ensemble(path, ensemble):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_canonical(ensemble_to_json_dict(ensemble)))


def load_map_spec(path):
    return map_spec_from_json_dict(_load_json(path), name=str(path))


def save_map_spec(path, phi):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_canonical(map_spec_to_json_dict(phi)))


def load_plan(path):
    return plan_from_json_dict(_load_json(path), name=str(path))
