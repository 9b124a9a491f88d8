import json

import numpy as np
import pytest

from wassmean.barycenter import Ensemble
from wassmean.checks import SuitePlan
from wassmean.hermitian import random_spd
from wassmean.io import (
    FormatError,
    dumps_canonical,
    ensemble_from_json_dict,
    ensemble_to_json_dict,
    load_ensemble,
    load_matrix,
    map_spec_from_json_dict,
    map_spec_to_json_dict,
    matrix_from_json_dict,
    matrix_to_json_dict,
    plan_from_json_dict,
    plan_to_json_dict,
    save_ensemble,
    save_matrix,
)
from wassmean.products import ando_map, random_isometry_map


def test_matrix_round_trip_complex(tmp_path):
    a = random_spd(3, seed=1, eig_lo=0.5, eig_hi=2.0)
    path = tmp_path / "a.json"
    save_matrix(path, a)
    back = load_matrix(path)
    assert np.allclose(back, a, atol=1e-15)


def test_matrix_im_defaults_to_zero():
    got = matrix_from_json_dict({"dim": 2, "re": [[2.0, 0.5], [0.5, 1.0]]})
    assert got.dtype == np.complex128
    assert np.allclose(got.imag, 0.0)


def test_matrix_symmetrized_within_tolerance():
    doc = {"dim": 2, "re": [[2.0, 0.5 + 4e-13], [0.5, 1.0]]}
    got = matrix_from_json_dict(doc)
    assert got[0, 1] == got[1, 0].conjugate()


def test_matrix_rejects_asymmetry_beyond_tolerance():
    doc = {"dim": 2, "re": [[2.0, 0.6], [0.5, 1.0]]}
    with pytest.raises(FormatError, match="not Hermitian"):
        matrix_from_json_dict(doc, name="matrices[0]")


def test_matrix_rejects_shape_and_field_errors():
    with pytest.raises(FormatError, match=r"\.dim"):
        matrix_from_json_dict({"re": [[1.0]]})
    with pytest.raises(FormatError, match=r"\.re"):
        matrix_from_json_dict({"dim": 2})
    with pytest.raises(FormatError, match="shape"):
        matrix_from_json_dict({"dim": 2, "re": [[1.0, 0.0]]})
    with pytest.raises(FormatError, match=r"\.im"):
        matrix_from_json_dict({"dim": 1, "re": [[1.0]], "im": [[0.0, 0.0]]})


def test_matrix_rejects_non_spd_when_required():
    doc = {"dim": 2, "re": [[1.0, 0.0], [0.0, -1.0]]}
    with pytest.raises(FormatError, match="positive definite"):
        matrix_from_json_dict(doc)
    assert matrix_from_json_dict(doc, spd=False) is not None


def test_ensemble_round_trip(tmp_path):
    mats = [random_spd(2, seed=s, eig_lo=0.5, eig_hi=2.0) for s in (1, 2, 3)]
    e = Ensemble(weights=[0.2, 0.3, 0.5], matrices=mats)
    path = tmp_path / "e.json"
    save_ensemble(path, e)
    back = load_ensemble(path)
    assert np.allclose(back.weights, e.weights)
    assert np.allclose(back.matrices, e.matrices, atol=1e-15)


def test_ensemble_rejects_weight_sum():
    doc = {
        "weights": [0.5, 0.48],
        "matrices": [matrix_to_json_dict(np.eye(2))] * 2,
    }
    with pytest.raises(FormatError, match="sum to 0.98"):
        ensemble_from_json_dict(doc)


def test_ensemble_rejects_missing_fields_and_naming():
    with pytest.raises(FormatError, match="weights"):
        ensemble_from_json_dict({"matrices": []})
    with pytest.raises(FormatError, match=r"matrices\[1\]"):
        ensemble_from_json_dict({
            "weights": [0.5, 0.5],
            "matrices": [
                matrix_to_json_dict(np.eye(2)),
                {"dim": 2, "re": [[1.0, 0.3], [0.0, 1.0]]},
            ],
        })


def test_ensemble_dimension_mismatch_named():
    doc = {
        "weights": [0.5, 0.5],
        "matrices": [matrix_to_json_dict(np.eye(2)), matrix_to_json_dict(np.eye(3))],
    }
    with pytest.raises(FormatError, match="mixed dimensions"):
        ensemble_from_json_dict(doc)


def test_map_spec_round_trips():
    iso = random_isometry_map(4, 2, seed=5)
    back = map_spec_from_json_dict(map_spec_to_json_dict(iso))
    assert np.allclose(back.isometry, iso.isometry)
    diag = ando_map(3)
    back = map_spec_from_json_dict(map_spec_to_json_dict(diag))
    assert back.kind == "ando"
    assert np.array_equal(back.isometry, diag.isometry)


def test_map_spec_rejects_bad_kind_and_grid():
    with pytest.raises(FormatError, match="kind"):
        map_spec_from_json_dict({"kind": "kraus"})
    with pytest.raises(FormatError, match="v_re"):
        map_spec_from_json_dict({"kind": "isometry"})
    with pytest.raises(FormatError, match=r"\.m"):
        map_spec_from_json_dict({"kind": "ando", "m": 0})


def test_plan_round_trip_and_all_expansion():
    plan = plan_from_json_dict({"checks": "all", "seeds": [0, 10], "tol": 1e-7})
    assert plan.seeds == (0, 10)
    assert plan.tol == 1e-7
    assert "bounds" in plan.checks
    doc = plan_to_json_dict(plan)
    again = plan_from_json_dict(doc)
    assert again == SuitePlan(**{
        "checks": plan.checks, "seeds": plan.seeds,
        "dims": plan.dims, "tol": plan.tol,
    })


def test_plan_rejects_malformed():
    with pytest.raises(FormatError, match="seeds"):
        plan_from_json_dict({"checks": "all", "seeds": [3]})
    with pytest.raises(FormatError, match="unknown"):
        plan_from_json_dict({"checks": ["nope"]})
    with pytest.raises(FormatError, match="checks"):
        plan_from_json_dict({"checks": 7})
    with pytest.raises(FormatError, match=r"\.tol"):
        plan_from_json_dict({"checks": "all", "tol": "loose"})


def test_load_rejects_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(FormatError, match="invalid JSON"):
        load_matrix(path)


def test_dumps_canonical_is_stable():
    payload = {"b": 1.5, "a": [1, 2, 3]}
    assert dumps_canonical(payload) == dumps_canonical(json.loads(dumps_canonical(payload)))
    assert dumps_canonical(payload).startswith("{\n")


def test_ensemble_json_shape():
    e = Ensemble(weights=[1.0], matrices=[np.eye(2)])
    doc = ensemble_to_json_dict(e)
    assert set(doc) == {"weights", "matrices"}
    assert set(doc["matrices"][0]) == {"dim", "re", "im"}
