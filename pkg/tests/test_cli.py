"""Command line behavior: exact payloads, exit codes, determinism."""

import json

import pytest

import divcurl.operators as ops
from divcurl.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_increments_json_frozen(capsys):
    code, out = run_cli(capsys, "increments", "2", "9")
    assert code == 0
    obj = json.loads(out)
    assert obj["schema"] == "divcurl.increments/1"
    assert obj["m"] == 10
    assert [(e["ell"], e["N"]) for e in obj["admissible"]] == \
        [(1, 10), (2, 5), (3, 5), (9, 10)]
    assert obj["rejected"] == []


def test_increments_csv_exact(capsys):
    code, out = run_cli(capsys, "increments", "2", "2", "--format", "csv")
    assert code == 0
    assert out == "ell,N,m\n1,3,3\n2,3,3\n"


def test_increments_text(capsys):
    code, out = run_cli(capsys, "increments", "3", "1", "--format", "text")
    assert code == 0
    assert "ell=1  N=3" in out


def test_laplacian_unit_step_is_kronecker(capsys):
    code, out = run_cli(capsys, "laplacian", "2", "2", "1",
                        "--ordering", "diagonal", "--q", "1")
    assert code == 0
    obj = json.loads(out)
    assert obj["kronecker"] is True
    assert obj["schema"] == "divcurl.laplacian/1"
    assert all(v in (-2, -1, 1, 2) for *_, v in obj["entries"])


def test_symbol_point_evaluation_frozen(capsys):
    code, out = run_cli(capsys, "symbol", "2", "2", "1", "--ordering",
                        "diagonal", "--xi", "2,3", "--source")
    assert code == 0
    obj = json.loads(out)
    assert obj["matrix"] == [["97"]]
    code, out = run_cli(capsys, "symbol", "2", "2", "1", "--xi", "2,3")
    matrix = json.loads(out)["matrix"]
    assert all(matrix[i][j] == ("133" if i == j else "0")
               for i in range(len(matrix)) for j in range(len(matrix)))


def test_symbol_accepts_rational_xi(capsys):
    code, out = run_cli(capsys, "symbol", "2", "1", "1", "--xi", "1,-2/3")
    assert code == 0
    obj = json.loads(out)
    # sigma = 1 + 4/9 = 13/9 on the diagonal
    assert obj["matrix"][0][0] == "13/9"


def test_symbol_scan_reports_chained_degeneracy(capsys):
    code, out = run_cli(capsys, "symbol", "2", "3", "1", "--ordering",
                        "chained", "--source", "--samples", "10")
    assert code == 0
    obj = json.loads(out)
    assert obj["schema"] == "divcurl.symbol-scan/1"
    assert obj["degenerate_witnesses"]


def test_verify_passes_and_is_byte_identical(capsys):
    args = ("verify", "--cases", "2,1,1,lexicographic", "--seed", "3")
    code1, out1 = run_cli(capsys, *args)
    code2, out2 = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    obj = json.loads(out1)
    assert obj["all_passed"] is True


def test_verify_scope_filters_records(capsys):
    code, out = run_cli(capsys, "verify", "--cases", "2,2,1,diagonal",
                        "--scope", "symbol")
    assert code == 0
    obj = json.loads(out)
    assert obj["scope"] == "symbol"
    assert obj["records"]
    assert all(r["name"].startswith("symbol_") for r in obj["records"])


def test_verify_exit_code_on_corruption(capsys, monkeypatch):
    real = ops._tstar_table.__wrapped__

    def corrupted(s, q, top):
        return tuple((I, b, V, -sg) for I, b, V, sg in real(s, q, top))

    monkeypatch.setattr(ops, "_tstar_table", corrupted)
    code, out = run_cli(capsys, "verify", "--cases", "2,1,1,lexicographic",
                        "--format", "text")
    assert code == 1
    assert "FAIL" in out


def test_out_writes_file_instead_of_stdout(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out = run_cli(capsys, "increments", "2", "2", "--out", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["m"] == 3


def test_ineq_with_config_file(capsys, tmp_path):
    config = {
        "seed": 4,
        "probes": [
            {"kind": "classical_gn", "n": 2, "trials": 2, "P": 32},
        ],
    }
    path = tmp_path / "config.json"
    path.write_text(json.dumps(config))
    code, out = run_cli(capsys, "ineq", "--config", str(path))
    assert code == 0
    obj = json.loads(out)
    assert obj["seed"] == 4
    assert obj["results"][0]["max_rel_gap"] < 1e-12
    # seed override flows through
    code, out = run_cli(capsys, "ineq", "--config", str(path), "--seed", "9")
    assert json.loads(out)["seed"] == 9


def test_ineq_bad_config_exits_cleanly(capsys, tmp_path):
    config = {"seed": 4, "probes": [{"kind": "duality", "n": 2, "k": 1}]}
    path = tmp_path / "config.json"
    path.write_text(json.dumps(config))
    code = main(["ineq", "--config", str(path)])
    captured = capsys.readouterr()
    assert code == 2
    assert captured.out == ""
    assert "divcurl: error:" in captured.err
    assert "'q'" in captured.err and "'sigma_range'" in captured.err


def test_ineq_missing_config_file_exits_cleanly(capsys, tmp_path):
    code = main(["ineq", "--config", str(tmp_path / "nope.json")])
    captured = capsys.readouterr()
    assert code == 2
    assert "divcurl: error:" in captured.err


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
