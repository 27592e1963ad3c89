import json

import numpy as np
import pytest
from hypothesis import given, settings

from hilbertball.errors import ParseError
from hilbertball.geometry import BallPoint
from hilbertball.serialize import (
    dumps,
    format_float,
    load_matrix,
    load_vector,
    matrix_from_json,
    matrix_to_json,
    save_matrix,
    trajectory_csv,
    vector_from_json,
)

from conftest import complex_matrices


def test_format_float_normalizes_negative_zero():
    assert format_float(-0.0) == "0"
    assert format_float(0.1) == "0.10000000000000001"


@settings(max_examples=120, deadline=None)
@given(complex_matrices(dim=3, scale=1e6))
def test_matrix_roundtrip_is_exact(M):
    back = matrix_from_json(matrix_to_json(M))
    assert np.array_equal(back, M)


def test_roundtrip_through_text(tmp_path):
    rng = np.random.default_rng(11)
    M = rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2))
    p = tmp_path / "m.json"
    save_matrix(p, M)
    assert np.array_equal(load_matrix(p), M)
    # %.17g carries full binary64 precision, so the trip is bit exact
    text = p.read_text()
    assert json.loads(text)["rows"] == 4


def test_vector_roundtrip(tmp_path):
    v = np.array([1.0 + 2.0j, -0.5 + 0j])
    p = tmp_path / "v.json"
    save_matrix(p, v.reshape(-1, 1))
    assert np.array_equal(load_vector(p), v)


def test_vector_requires_single_column():
    obj = matrix_to_json(np.eye(2, dtype=complex))
    with pytest.raises(ParseError):
        vector_from_json(obj)


def test_parse_rejects_malformed_documents():
    good = matrix_to_json(np.eye(2, dtype=complex))
    for mutate in (
        lambda o: o.pop("rows"),
        lambda o: o.update(rows=0),
        lambda o: o.update(rows=True),
        lambda o: o.update(extra=1),
        lambda o: o.update(data=[[1.0, 2.0]]),
        lambda o: o["data"].__setitem__(0, [1.0]),
        lambda o: o["data"].__setitem__(0, [1.0, float("nan")]),
        lambda o: o["data"].__setitem__(0, [1.0, "x"]),
    ):
        obj = json.loads(json.dumps(good))
        mutate(obj)
        with pytest.raises(ParseError):
            matrix_from_json(obj)


def test_load_rejects_bad_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ParseError):
        load_matrix(p)
    with pytest.raises(ParseError):
        load_matrix(tmp_path / "missing.json")


def test_trajectory_csv_golden():
    samples = [(0.0, BallPoint([0.1 + 0.2j])), (0.5, BallPoint([0.3 - 0.1j]))]
    want = (
        "t,re_z1,im_z1\n"
        "0,0.10000000000000001,0.20000000000000001\n"
        "0.5,0.29999999999999999,-0.10000000000000001\n"
    )
    assert trajectory_csv(samples) == want


def test_trajectory_csv_columns_follow_dimension():
    samples = [(0.0, BallPoint([0.1 + 0j, 0.2j, 0.0]))]
    header = trajectory_csv(samples).splitlines()[0]
    assert header == "t,re_z1,im_z1,re_z2,im_z2,re_z3,im_z3"


def test_dumps_is_deterministic_and_plain_json():
    doc = {
        "name": "x",
        "flag": np.bool_(True),
        "count": np.int64(3),
        "value": 0.1,
        "items": [1.0, 2.0, None],
        "nested": {"b": 1.0, "a": 2.0},
    }
    a, b = dumps(doc), dumps(doc)
    assert a == b
    parsed = json.loads(a)
    assert parsed["flag"] is True
    assert parsed["count"] == 3
    # insertion order of keys is preserved, not sorted
    assert a.index('"b"') < a.index('"a"')


def test_dumps_matches_format_float():
    assert '"v": 0.10000000000000001' in dumps({"v": 0.1})
