import json
import subprocess
import sys

import pytest

from cdlevel import jsonio, reproduce
from cdlevel.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out)


def test_form_isotropy(capsys):
    code, data = run_json(capsys, "form", "isotropy", "--field", "q", "--coeffs", "1,1,1,1,-7")
    assert code == 0 and data["status"] == "Isotropic" and data["witness"] == [2, 1, 1, 1, 1]
    assert jsonio.decode_form(data["form"]).dim == 5


def test_form_build(capsys):
    code, data = run_json(capsys, "form", "build", "pfister", "--field", "q", "--params", "-1,-1")
    assert code == 0 and data["coeffs"] == [1, -1, -1, 1]
    code, data = run_json(capsys, "form", "build", "perp", "--field", "f5", "--coeffs", "1,2", "--other", "3")
    assert code == 0 and data["coeffs"] == [1, 2, 3]


def test_form_unknown_exit_code(capsys):
    big = str(1000000007 * 998244353)
    code, data = run_json(capsys, "form", "isotropy", "--field", "q", "--coeffs", f"1,{big}")
    assert code == 2 and data["status"] == "Unknown"


def test_form_other_actions(capsys):
    code, data = run_json(capsys, "form", "witt", "--field", "f5", "--coeffs", "1,-1")
    assert code == 0 and data["witt_index"] == 1
    code, data = run_json(capsys, "form", "evaluate", "--field", "q", "--coeffs", "1,1,1,1,-7",
                          "--vector", "2,1,1,1,1")
    assert code == 0 and data["value"] == 0


def test_algebra_forms(capsys):
    code, data = run_json(capsys, "algebra", "forms", "--field", "q", "--gammas", "-1,-1")
    assert code == 0
    assert data["T_C"] == [1, -1, -1, -1] and data["T_P"] == [-1, -1, -1] and data["n_C"] == [1, 1, 1, 1]


def test_algebra_brown_and_forms(capsys, tmp_path):
    code, data = run_json(capsys, "algebra", "brown", "-t", "3", "--base", "q")
    assert code == 0 and len(data["T_C"]) == 8
    path = tmp_path / "alg.json"
    path.write_text(json.dumps(data["algebra"]))
    code, forms = run_json(capsys, "algebra", "forms", "--file", str(path))
    assert code == 0
    assert forms["T_C"] == ["1", "X1", "X2", "-X1*X2", "X3", "-X1*X3", "-X2*X3", "X1*X2*X3"]


def test_algebra_zerodiv_and_mul(capsys):
    code, data = run_json(capsys, "algebra", "zerodiv", "--field", "q", "--gammas", "-1,-1,-1,-1")
    assert code == 0 and data["found"] and not any(data["product"])
    A = jsonio.decode_algebra(data["algebra"])
    x, y = A.element(data["x"]), A.element(data["y"])
    assert not x.is_zero() and not y.is_zero() and (x * y).is_zero()
    code, data = run_json(capsys, "algebra", "mul", "--field", "q", "--gammas", "-1,-1",
                          "--x", "0,1,0,0", "--y", "0,0,1,0")
    assert code == 0 and data["coords"] in ([0, 0, 0, 1], [0, 0, 0, -1])


def test_algebra_report(capsys):
    code, data = run_json(capsys, "algebra", "report", "--brown", "2", "--base", "q")
    assert code == 0 and data["status"] == "Anisotropic"
    assert data["interpretation"].startswith("division")


def test_level_brute(capsys):
    code, data = run_json(capsys, "level", "brute", "--field", "f3", "--gammas", "1,1")
    assert code == 0 and data["level"] == [1, 1] and data["sublevel"] == [1, 1]
    report = jsonio.decode_report(data)
    assert all(c.verify() for c in report.certificates)


def test_level_interval_and_registry(capsys):
    code, data = run_json(capsys, "level", "interval", "-n", "34", "-t", "3", "--variant", "both")
    assert code == 0
    assert data["plain"]["level"] == [30, 34] and data["plain"]["sublevel"] == [29, 34]
    assert data["prime"]["level"] == [32, 34]
    code, data = run_json(capsys, "level", "registry", "-n", "6", "-t", "3")
    assert code == 0 and data["plain"]["level"] == [6, 6] and data["plain"]["sublevel"] == [6, 6]


def test_level_criteria(capsys):
    code, data = run_json(capsys, "level", "criteria", "--field", "f3", "--gammas", "1,1", "--with-brute")
    assert code == 0 and data["level"] == [1, 1] and data["sublevel"] == [1, 1]


def test_input_errors(capsys):
    for argv in (
        ["form", "isotropy", "--field", "f4", "--coeffs", "1"],
        ["form", "isotropy", "--field", "q", "--coeffs", "1,0"],
        ["form", "isotropy", "--field", "q"],
        ["algebra", "construct", "--field", "q", "--gammas", "0"],
        ["level", "brute", "--field", "q", "--gammas", "-1"],
        ["nonsense"],
    ):
        code, _, err = run(capsys, *argv)
        assert code == 1 and err


def test_config_file_env_and_flag_precedence(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"factor_bound": 100}))
    coeffs = ["--coeffs", f"1,{10007 * 10009}"]
    code, data = run_json(capsys, "form", "isotropy", "--field", "q", *coeffs)
    assert code == 0
    code, data = run_json(capsys, "form", "isotropy", "--field", "q", "--config", str(cfg), *coeffs)
    assert code == 2 and data["status"] == "Unknown"
    monkeypatch.setenv("CDLEVEL_CONFIG", str(cfg))
    code, data = run_json(capsys, "form", "isotropy", "--field", "q", *coeffs)
    assert code == 2
    code, data = run_json(capsys, "form", "isotropy", "--field", "q", "--factor-bound", "20000", *coeffs)
    assert code == 0 and data["status"] == "Anisotropic"
    cfg.write_text(json.dumps({"bogus": 1}))
    code, _, err = run(capsys, "form", "isotropy", "--field", "q", *coeffs)
    assert code == 1 and err


def test_reproduce_text_and_json(capsys):
    code, out, _ = run(capsys, "paper")
    assert code == 0
    assert "[30, 34]" in out and "[29, 34]" in out and "[32, 34]" in out and "checks match" in out
    code, out, _ = run(capsys, "reproduce", "--t", "4", "--no-small-fields")
    assert code == 0 and "[64, 66]" in out
    code, out, _ = run(capsys, "reproduce", "--t", "3", "--check-dims", "--no-small-fields")
    assert code == 0 and "234 > 225 holds" in out
    code, data = run_json(capsys, "reproduce", "--json", "--no-small-fields")
    assert code == 0 and data["ok"]


def test_reproduce_mismatch_exit_code(capsys, monkeypatch):
    monkeypatch.setitem(reproduce.GOLDEN_N34, "prime", (31, 34))
    code, out, _ = run(capsys, "reproduce", "--no-small-fields")
    assert code == 4 and "MISMATCH" in out


def test_level_form_round_trip(capsys):
    code, data = run_json(capsys, "form", "isotropy", "--field", "ff:q:2", "--coeffs", "1,-X1,-X2,X1*X2")
    assert code == 0 and data["status"] == "Anisotropic"
    again = json.dumps(jsonio.encode_form(jsonio.decode_form(data["form"])))
    assert json.loads(again) == data["form"]


@pytest.mark.parametrize("argv", [["--help"], ["field", "--field", "f7"]])
def test_console_entry_point(argv):
    proc = subprocess.run([sys.executable, "-m", "cdlevel", *argv], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout
