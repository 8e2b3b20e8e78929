import json
import subprocess
import sys

import pytest

from qlie.algebra import compute_structure_constants
from qlie.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, EXIT_RESOURCE, main, parse_config, sqrt_q
from qlie.serialize import loads_table, loads_table_csv


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_generate_gl2(tmp_path, capsys):
    out = tmp_path / "gl2.json"
    code, _, _ = run(capsys, "generate", "--n", "2", "--kind", "gl", "--out", str(out))
    assert code == EXIT_OK
    sc = loads_table(out.read_text(), 2, "gl")
    assert sc == compute_structure_constants(2, "gl")
    assert len(sc.labels) == 4
    assert all("K" not in r["bracket"] for r in json.loads(out.read_text()))
    assert (tmp_path / "gl2.roots.json").exists()
    assert (tmp_path / "gl2.killing.json").exists()


def test_generate_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(capsys, "generate", "--n", "3", "--kind", "sl", "--format", "csv", "--out", str(a))
    run(capsys, "generate", "--n", "3", "--kind", "sl", "--format", "csv", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()
    sc = loads_table_csv(a.read_text(), 3, "sl")
    assert len(sc.labels) == 8


def test_generate_reports_printed_disagreement(tmp_path, capsys):
    code, _, err = run(capsys, "generate", "--n", "3", "--kind", "sl", "--out", str(tmp_path / "x.json"))
    assert code == EXIT_FAIL
    assert "M(1, 2, 3)" in err
    code, _, _ = run(capsys, "generate", "--n", "3", "--kind", "sl", "--formulas", "corrected",
                     "--out", str(tmp_path / "x.json"))
    assert code == EXIT_OK


@pytest.mark.parametrize("argv", [
    ["generate", "--n", "1"],
    ["generate", "--kind", "so"],
    ["eval", "--n", "2", "--q", "0"],
    ["eval", "--n", "2", "--q", "2"],
    ["eval", "--n", "2", "--q", "abc"],
    ["eval", "--n", "2"],
    ["verify", "--convention", "b"],
    ["verify", "--formulas", "other"],
    ["frobnicate"],
])
def test_invalid_input(argv, capsys):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_INPUT
    assert err


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2")
    assert code == EXIT_OK and "all pass" in out
    code, out, _ = run(capsys, "verify", "--n", "3", "--kind", "sl")
    assert code == EXIT_FAIL and "(k) lowered-index relations: FAIL" in out
    code, out, _ = run(capsys, "verify", "--n", "3", "--kind", "sl", "--formulas", "corrected")
    assert code == EXIT_OK


def test_oracle_commands(capsys):
    code, out, _ = run(capsys, "oracle", "--n", "2")
    assert code == EXIT_OK and "identical" in out
    code, _, err = run(capsys, "oracle", "--n", "5")
    assert code == EXIT_RESOURCE and "term-cap" in err


def test_eval_classical(capsys):
    code, out, _ = run(capsys, "eval", "--n", "2", "--q", "1")
    assert code == EXIT_OK
    recs = {tuple(r["bracket"]): r["result"] for r in json.loads(out)}
    assert recs["X_1_2", "X_2_1"] == {"H_1": "1"}
    assert recs["H_1", "X_1_2"] == {"X_1_2": "2"}
    assert ("H_1", "H_1") not in recs


def test_eval_rational(capsys):
    code, out, _ = run(capsys, "eval", "--n", "2", "--q", "4", "--format", "csv")
    assert code == EXIT_OK
    assert "H_1,H_1,H_1,255/16" in out.splitlines()


def test_sqrt_q():
    assert sqrt_q("9/4") == 1.5
    with pytest.raises(ValueError):
        sqrt_q("-4")


def test_dump_r(capsys):
    code, out, _ = run(capsys, "dump-r", "--n", "2", "--format", "csv")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "r,i,j,k,l,scalar"
    assert "pi pi*,2,2,1,1,(-1 + q^(-2))" in lines


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\nn = 3\nkind = sl\nformat = csv\n")
    rc = parse_config(["generate", "--config", str(cfg)])
    assert (rc.n, rc.kind, rc.format) == (3, "sl", "csv")
    rc = parse_config(["generate", "--config", str(cfg), "--n", "4"])
    assert (rc.n, rc.kind) == (4, "sl")


def test_bad_config(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("colour = blue\n")
    code, _, err = run(capsys, "generate", "--config", str(cfg))
    assert code == EXIT_INPUT and "colour" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qlie", "generate", "--n", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == EXIT_INPUT
