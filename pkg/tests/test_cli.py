import json
import math

import numpy as np
import pytest

from symtensor import cli
from symtensor.io import matrix_to_dict
from symtensor.theorems.suites import REGISTRY


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def matrix_of(report):
    return np.array([[complex(*z) for z in row] for row in report["entries"]])


@pytest.fixture
def files(tmp_path):
    def write(name, m):
        p = tmp_path / name
        p.write_text(json.dumps(matrix_to_dict(np.asarray(m, dtype=complex))))
        return str(p)

    return {
        "A": write("A.json", [[1, 0], [0, 0]]),
        "B": write("B.json", [[0, 0], [1, 0]]),
        "I": write("I.json", np.eye(3)),
        "P": write("P.json", [[1, 1], [1, 1]]),
        "dir": tmp_path,
    }


def test_product_witness_pair(capsys, files):
    code, out, _ = run(capsys, "product", "--flavor", "sym", files["A"], files["B"])
    assert code == 0
    rep = json.loads(out)
    m = matrix_of(rep)
    expected = np.zeros((3, 3))
    expected[1, 0] = 1 / math.sqrt(2)
    np.testing.assert_allclose(m, expected, atol=1e-15)
    assert rep["seed"] == 0 and "tol" in rep and "version" in rep and rep["statement"]


def test_product_identity_and_rank_one_wedge(capsys, files):
    _, out, _ = run(capsys, "product", "--flavor", "sym", files["I"], files["I"])
    np.testing.assert_allclose(matrix_of(json.loads(out)), np.eye(6), atol=1e-15)
    _, out, _ = run(capsys, "product", "--flavor", "asym", files["P"], files["P"])
    np.testing.assert_allclose(matrix_of(json.loads(out)), 0, atol=1e-15)


def test_product_inline_operators(capsys):
    code, out, _ = run(capsys, "product", "shift", "diag:1,2,3", "--dim", "3")
    assert code == 0
    assert json.loads(out)["rows"] == 6
    code, out, _ = run(capsys, "product", "identity", "identity", "--dim", "2", "--format", "pretty")
    assert code == 0 and out.startswith("#")


def test_product_csv_flattens_complex(capsys, files):
    _, out, _ = run(capsys, "product", files["A"], files["B"], "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "re_0,im_0,re_1,im_1,re_2,im_2"
    assert len(lines) == 4
    assert float(lines[2].split(",")[0]) == pytest.approx(1 / math.sqrt(2))


def test_output_file(capsys, files):
    target = files["dir"] / "out.json"
    code, out, _ = run(capsys, "product", files["A"], files["B"], "--output", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["command"] == "product"


def test_product_errors(capsys, files, monkeypatch):
    bad = files["dir"] / "bad.json"
    bad.write_text('{"rows": 2, "cols": 2, "entries": [[1, "x"]]}')
    assert run(capsys, "product", str(bad), str(bad))[0] == 2
    assert run(capsys, "product", files["A"])[0] == 2
    assert run(capsys, "product", files["A"], files["I"])[0] == 2
    assert run(capsys, "product", "shift", "shift")[0] == 2
    assert run(capsys, "product", "identity", "identity")[0] == 2
    monkeypatch.setenv("SYMTENSOR_MAX_DIM", "10")
    assert run(capsys, "product", files["I"], files["I"], files["I"])[0] == 3


def test_unknown_flag_is_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["product", "--frobnicate"])
    assert exc.value.code == 2


def test_spectrum_diagonals(capsys):
    code, out, _ = run(capsys, "spectrum", "--diag", "1,2", "--diag", "3,4")
    assert code == 0
    rep = json.loads(out)
    assert [z[0] for z in rep["eigenvalues"]] == pytest.approx([3, 5, 8])
    assert rep["closed_form_deviation"] < 1e-12


def test_spectrum_shift_blocks(capsys):
    from symtensor import multisets_match, spec_Bk

    code, out, _ = run(capsys, "spectrum", "--op", "shift-sym-adjoint", "--K", "20")
    assert code == 0
    rep = json.loads(out)
    expected = np.concatenate([spec_Bk(k) for k in range(21)])
    assert multisets_match([z[0] for z in rep["eigenvalues"]], expected, 1e-12)
    assert rep["suite"] == "thm-8.1"
    code, out, _ = run(capsys, "spectrum", "--op", "shift-asym-adjoint", "--K", "5", "--format", "csv")
    assert code == 0 and out.startswith("re,im")


def test_spectrum_of_product(capsys, files):
    code, out, _ = run(capsys, "spectrum", files["I"])
    assert code == 0
    assert [z[0] for z in json.loads(out)["eigenvalues"]] == pytest.approx([1] * 6)
    assert run(capsys, "spectrum")[0] == 2
    assert run(capsys, "spectrum", "--diag", "1", "--op", "shift-sym-adjoint")[0] == 2
    assert run(capsys, "spectrum", "--op", "shift-sym-adjoint", "--K", "500")[0] == 2


def test_verify_single_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "prop-7.1", "--trials", "1000", "--seed", "7")
    assert code == 0
    rep = json.loads(out)
    assert rep["passed"] and rep["suite"] == "prop-7.1" and rep["seed"] == 7


def test_verify_thm_8_1(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "thm-8.1", "--K", "40")
    assert code == 0 and json.loads(out)["passed"]


def test_verify_failure_and_bad_id(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "thm-9.1b", "--trials", "3", "--format", "pretty")
    assert code == 1 and out.startswith("FAIL")
    assert run(capsys, "verify", "--suite", "nosuch")[0] == 2


def test_verify_is_byte_identical(capsys):
    argv = ("verify", "--suite", "thm-5.1a", "--trials", "5", "--seed", "4")
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_verify_all_parallel_matches_serial(capsys, monkeypatch):
    cheap = {sid: REGISTRY[sid] for sid in ("prop-2.2", "lemma-4.1", "eq-7.2")}
    monkeypatch.setattr(cli, "REGISTRY", cheap)
    base = ("verify", "--suite", "all", "--trials", "4")
    code, serial, _ = run(capsys, *base)
    assert code == 0
    code, parallel, _ = run(capsys, *base, "--jobs", "2")
    assert code == 0
    assert serial == parallel
    rep = json.loads(serial)
    assert [r["suite"] for r in rep["suites"]] == list(cheap)
    _, out, _ = run(capsys, *base, "--format", "csv")
    assert out.splitlines()[0].startswith("suite,passed")


def test_explore(capsys):
    code, out, _ = run(capsys, "explore", "--conjecture", "vector-lower-bound", "--n", "4", "--trials", "300")
    assert code == 0
    obs = json.loads(out)["observations"]
    assert obs["asserted"] is False and obs["bound"] == pytest.approx(1 / math.sqrt(24))
    code, out, _ = run(capsys, "explore", "--conjecture", "operator-lower-bound", "--n", "2", "--trials", "10", "--format", "csv")
    assert code == 0 and out.startswith("kind,")
    assert run(capsys, "explore", "--conjecture", "vector-lower-bound", "--n", "9")[0] == 2
