import json

import numpy as np
import pytest
from conftest import complex_matrices
from hypothesis import given

from symtensor import Conjugation, InputFormatError, OperatorSpec, conjugate_operator, is_c_symmetric, kron, materialize
from symtensor.io import (
    load_operator,
    matrix_from_dict,
    matrix_to_dict,
    operator_from_dict,
    parse_scalar,
    read_matrix_csv,
    write_matrix_csv,
)
from symtensor.operators import apply_kron


def test_materialize_kinds():
    np.testing.assert_array_equal(materialize(OperatorSpec.shift(), 3), np.eye(3, k=-1))
    np.testing.assert_array_equal(materialize(OperatorSpec.backshift(), 3), np.eye(3, k=1))
    np.testing.assert_array_equal(materialize(OperatorSpec.diagonal([1, 2, 3, 4]), 3), np.diag([1, 2, 3]))
    np.testing.assert_array_equal(materialize(OperatorSpec.weighted_shift([5, 6]), 3), np.diag([5, 6], k=-1))
    S = materialize(OperatorSpec.shift(), 5)
    np.testing.assert_array_equal(S.T, materialize(OperatorSpec.backshift(), 5))


def test_materialize_errors():
    with pytest.raises(ValueError):
        materialize(OperatorSpec.diagonal([1, 2]), 3)
    with pytest.raises(ValueError):
        materialize(OperatorSpec.dense(np.eye(2)), 3)
    with pytest.raises(ValueError):
        materialize(OperatorSpec.shift(), 0)
    with pytest.raises(ValueError):
        OperatorSpec("rotation")
    with pytest.raises(ValueError):
        OperatorSpec("dense")
    with pytest.raises(ValueError):
        OperatorSpec.diagonal([1, np.inf])


def test_kron_matches_apply_kron(rng):
    mats = [rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)) for d in (2, 3, 2)]
    x = rng.standard_normal(12)
    np.testing.assert_allclose(kron(mats) @ x, apply_kron(mats, x), atol=1e-12)
    with pytest.raises(ValueError):
        kron([])


@given(complex_matrices())
def test_conjugation_gives_transpose(A):
    C = Conjugation()
    np.testing.assert_array_equal(conjugate_operator(C, A), A.T)
    v = np.arange(A.shape[0]) * (1 + 2j)
    # C A^* C v computed literally
    np.testing.assert_allclose(C(A.conj().T @ C(v)), A.T @ v, atol=1e-12)
    assert is_c_symmetric(A + A.T)


def test_unsupported_conjugation():
    with pytest.raises(ValueError):
        conjugate_operator(Conjugation("other"), np.eye(2))


@pytest.mark.parametrize("value,expected", [([1, 2], 1 + 2j), (3, 3), (2.5, 2.5), ("1-2j", 1 - 2j), ("1 + 2i", 1 + 2j)])
def test_parse_scalar(value, expected):
    assert parse_scalar(value) == expected


@pytest.mark.parametrize("value", [[1, "x"], [1, 2, 3], [True, 0], "abc", None, True, {"re": 1}])
def test_parse_scalar_rejects(value):
    with pytest.raises(InputFormatError):
        parse_scalar(value)


@given(complex_matrices())
def test_matrix_json_round_trip(A):
    np.testing.assert_array_equal(matrix_from_dict(json.loads(json.dumps(matrix_to_dict(A)))), A)


@given(complex_matrices())
def test_matrix_csv_round_trip(A):
    np.testing.assert_array_equal(read_matrix_csv(write_matrix_csv(A)), A)


def test_matrix_json_nested_rows():
    m = matrix_from_dict({"rows": 2, "cols": 2, "entries": [[[1, 0], [0, 1]], [[2, 0], [3, 0]]]})
    np.testing.assert_array_equal(m, [[1, 1j], [2, 3]])


@pytest.mark.parametrize(
    "obj",
    [
        {"rows": 2, "cols": 2, "entries": [[1, 0]] * 3},
        {"rows": 0, "cols": 0, "entries": []},
        {"cols": 2, "entries": []},
        {"rows": 1, "cols": 1, "entries": [[float("nan"), 0]]},
        {"rows": 1, "cols": 1, "entries": "x"},
    ],
)
def test_matrix_json_errors(obj):
    with pytest.raises(InputFormatError):
        matrix_from_dict(obj)


def test_csv_errors():
    with pytest.raises(InputFormatError):
        read_matrix_csv("")
    with pytest.raises(InputFormatError):
        read_matrix_csv("1,2\n3\n")
    with pytest.raises(InputFormatError):
        read_matrix_csv("1,zz\n")


def test_operator_from_dict():
    op = operator_from_dict({"kind": "diagonal", "values": [[1, 0], 2, "3j"]})
    assert op.kind == "diagonal" and op.values == (1, 2, 3j)
    assert operator_from_dict({"kind": "back-shift"}).kind == "backshift"
    assert operator_from_dict({"kind": "weighted-shift", "weights": [1]}).kind == "weighted_shift"
    assert operator_from_dict({"rows": 1, "cols": 1, "entries": [[4, 0]]}).natural_size == 1
    for bad in ([], {"kind": "nope"}, {"kind": "diagonal"}, {"kind": "dense", "rows": 2, "cols": 3, "entries": [0] * 6}):
        with pytest.raises(InputFormatError):
            operator_from_dict(bad)


def test_load_operator(tmp_path):
    p = tmp_path / "m.json"
    p.write_text(json.dumps(matrix_to_dict(np.eye(2))))
    assert load_operator(p).label == "m"
    c = tmp_path / "m.csv"
    c.write_text("1,0\n0,1j\n")
    np.testing.assert_array_equal(load_operator(c).matrix, np.diag([1, 1j]))
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    for path in (bad, tmp_path / "missing.json"):
        with pytest.raises(InputFormatError):
            load_operator(path)
