import csv
import io
import json

import pytest

from rumin.cli import main, read_config
from rumin.forms import OperatorMatrix, d_c_matrix
from rumin.suites import SUITES, run_suite


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_basis_examples(capsys):
    code, out = run(capsys, "basis", "--n", "2", "--h", "2")
    assert code == 0 and json.loads(out)["dim"] == 5
    code, out = run(capsys, "basis", "--n", "1", "--h", "0")
    assert json.loads(out)["dim"] == 1
    code, out = run(capsys, "basis", "--n", "1", "--h", "3")
    data = json.loads(out)
    assert data["dim"] == 1
    assert data["vectors"] == [[{"monomial": [1, 2, 3], "c": "1/1"}]]


def test_basis_range_errors(capsys):
    assert main(["basis", "--n", "1", "--h", "4"]) == 2
    assert main(["basis", "--n", "0", "--h", "0"]) == 2
    assert "error" in capsys.readouterr().err


def test_unknown_suite():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "bogus"])
    assert exc.value.code == 2


def test_verify_algebra(capsys):
    code, out = run(capsys, "verify", "algebra")
    data = json.loads(out)
    assert code == 0
    assert data["summary"]["fail"] == 0 and data["summary"]["pass"] == len(data["checks"])
    ids = [c["check-id"] for c in data["checks"]]
    assert len(ids) == len(set(ids))
    assert {"check-id", "status", "measured", "tolerance", "anchor"} <= set(data["checks"][0])


def test_verify_rumin_n3(capsys):
    code, out = run(capsys, "verify", "rumin", "--n", "3")
    ids = {c["check-id"] for c in json.loads(out)["checks"]}
    assert code == 0
    assert {"rumin.dc-squared", "rumin.projector-sandwich", "rumin.d-pi-E"} <= ids


def test_verify_symbolic_csv(capsys):
    code, out = run(capsys, "verify", "symbolic", "--n", "2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and rows and all(r["status"] == "pass" for r in rows)


def test_verify_numeric_fast_deterministic(capsys):
    code1, out1 = run(capsys, "verify", "numeric-fast", "--seed", "7")
    code2, out2 = run(capsys, "verify", "numeric-fast", "--seed", "7")
    assert code1 == code2 == 0
    assert out1 == out2


def test_exit_code_reflects_failures(monkeypatch, capsys):
    import rumin.suites as suites

    monkeypatch.setitem(suites.REGISTRY, "algebra", [("always.fails", "none", lambda ctx: (1, 0, False))])
    assert main(["verify", "algebra"]) == 1
    assert json.loads(capsys.readouterr().out)["checks"][0]["status"] == "fail"


def test_export_import_roundtrip(tmp_path, capsys):
    path = tmp_path / "dc.json"
    assert main(["export", "dc-matrix", "--n", "1", "--h", "0", "--out", str(path)]) == 0
    data = json.loads(path.read_text())
    assert data["entries"] == [[[{"I": [1, 0, 0], "c": "1/1"}]], [[{"I": [0, 1, 0], "c": "1/1"}]]]
    assert OperatorMatrix.from_json(data) == d_c_matrix(1, 0)
    code, out = run(capsys, "import", str(path))
    assert code == 0 and json.loads(out)["matches_recomputed"]


def test_export_laplacian(tmp_path):
    path = tmp_path / "lap.json"
    assert main(["export", "laplacian", "--n", "1", "--h", "0", "--out", str(path)]) == 0
    entry = json.loads(path.read_text())["entries"][0][0]
    assert sorted((tuple(t["I"]), t["c"]) for t in entry) == [((0, 2, 0), "-1/1"), ((2, 0, 0), "-1/1")]


def test_export_errors(tmp_path, capsys):
    assert main(["export", "dc-matrix", "--n", "1", "--h", "3"]) == 2
    with pytest.raises(OSError):
        main(["export", "laplacian", "--n", "1", "--h", "0", "--out", str(tmp_path / "no" / "such" / "f")])


def test_import_detects_tampering(tmp_path, capsys):
    path = tmp_path / "dc.json"
    main(["export", "dc-matrix", "--n", "1", "--h", "1", "--out", str(path)])
    data = json.loads(path.read_text())
    data["entries"][0][0][0]["c"] = "7/1"
    path.write_text(json.dumps(data))
    code, out = run(capsys, "import", str(path))
    assert code == 1 and not json.loads(out)["matches_recomputed"]


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text("# experiment\nsize = 3\nlambda = 2.5\ngrid = 17\ngauss = 8\nh = 2\n")
    assert read_config(str(cfg))["lambda"] == "2.5"
    code, out = run(capsys, "poincare", "--config", str(cfg), "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["lambda"] == 2.5 and data["grid"] == 17 and len(data["rows"]) == 3
    # explicit flags win
    code, out = run(capsys, "poincare", "--config", str(cfg), "--size", "2", "--format", "json")
    assert len(json.loads(out)["rows"]) == 2


def test_config_unknown_key(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    with pytest.raises(SystemExit):
        main(["verify", "algebra", "--config", str(cfg)])


def test_poincare_csv(capsys):
    code, out = run(capsys, "poincare", "--n", "1", "--h", "2", "--p", "4", "--size", "3", "--grid", "17",
                    "--gauss", "8", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert list(rows[0]) == ["form-id", "h", "n", "norm_p", "norm_inf_primitive", "ratio", "residual"]
    assert len(rows) == 3
    assert main(["poincare", "--n", "1", "--h", "2", "--p", "3"]) == 2


def test_run_suite_rejects_unknown():
    with pytest.raises(ValueError):
        run_suite("nope")
    assert "numeric-full" in SUITES
