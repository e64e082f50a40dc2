import json
import subprocess
import sys

import pytest

from hypermatch import cli, matchpoly
from hypermatch.poly import SparsePoly

K4_TEXT = "3 4\n0 1 2\n0 1 3\n0 2 3\n1 2 3\n"


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {
        "k4": K4_TEXT,
        "empty": "3 3\n",
        "dup": "3 3\n0 1 2\n0 1 2\n",
        "edge": "3 3\n0 1 2\n",
        "tree": "3 7\n0 1 2\n2 3 4\n2 5 6\n",
    }.items():
        p = tmp_path / f"{name}.hgr"
        p.write_text(text)
        paths[name] = str(p)
    return paths


def run(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_matchpoly(files, capsys):
    code, out, _ = run(capsys, "matchpoly", files["k4"])
    assert code == 0
    assert json.loads(out) == {
        "mu": {"var": "x", "terms": [{"exp": 4, "coef": "1"}, {"exp": 1, "coef": "-4"}]}
    }
    code, out2, _ = run(capsys, "matchpoly", files["k4"], "--method", "recursive")
    assert code == 0 and out2 == out


def test_verify_godsil(files, capsys):
    # the literal path tree refutes the ratio identity on K_4^3; the ordered one confirms it
    code, out, _ = run(capsys, "verify", "godsil", files["k4"], "--root", "0")
    assert code == 1 and json.loads(out)["verified"] is False
    code, out, _ = run(capsys, "verify", "godsil", files["k4"], "--root", "0", "--ordered")
    assert code == 0 and json.loads(out)["verified"] is True


def test_verify_others(files, capsys):
    assert run(capsys, "verify", "divides", files["k4"], "--ordered")[0] == 0
    assert run(capsys, "verify", "divides", files["k4"])[0] == 1
    for kind in ("derivative", "rotation", "decomposition"):
        assert run(capsys, "verify", kind, files["k4"])[0] == 0
    assert run(capsys, "verify", "mono", files["k4"], "--vertex", "0")[0] == 0
    assert run(capsys, "verify", "mono", files["k4"], "--edge", "2")[0] == 0
    assert run(capsys, "verify", "mono", files["k4"])[0] == 2


def test_input_errors(files, capsys):
    code, _, err = run(capsys, "lambda", files["empty"])
    assert code == 2 and "no edges" in err
    assert run(capsys, "info", files["dup"])[0] == 2
    assert run(capsys, "info", "/nonexistent/x.hgr")[0] == 2
    code, _, err = run(capsys, "frobnicate")
    assert code == 2 and "usage" in err
    assert run(capsys, "matchpoly", files["k4"], "--bogus")[0] == 2
    assert run(capsys, "lambda", files["k4"], "--tol", "abc")[0] == 2
    assert run(capsys, "gen", "ktree", "--k", "3", "--m", "2", "--seed", "-4")[0] == 2


def test_resource_limit(files, capsys):
    assert run(capsys, "pathtree", files["k4"], "--root", "0", "--max-vertices", "5")[0] == 3


def test_pathtree(files, capsys, tmp_path):
    labels = tmp_path / "labels.json"
    code, out, _ = run(capsys, "pathtree", files["k4"], "--root", "0", "--labels", str(labels))
    assert code == 0
    assert out.splitlines()[0] == "3 19" and len(out.splitlines()) == 10
    doc = json.loads(labels.read_text())
    assert doc["root"] == 0 and len(doc["labels"]) == 19


def test_lambda_and_bounds(files, capsys):
    code, out, _ = run(capsys, "lambda", files["k4"])
    doc = json.loads(out)
    assert code == 0 and doc["lambda"]["mid"].startswith("1.5874010519")
    code, out, _ = run(capsys, "bounds", files["k4"])
    doc = json.loads(out)
    assert code == 0 and doc["lower_ok"] and doc["upper_ok"] and not doc["lower_tight"]
    code, out, _ = run(capsys, "bounds", files["edge"])
    assert code == 0 and json.loads(out)["upper_ok"] is None


def test_roots_csv(files, capsys):
    code, out, _ = run(capsys, "roots", files["k4"], "--csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "re,im" and len(lines) == 5
    assert lines[2] == "1.5874010519681994,0"


def test_cyclic_rho_info(files, capsys):
    assert json.loads(run(capsys, "cyclic", files["k4"])[1]) == {"cyclic_index": 3, "k": 3}
    code, out, _ = run(capsys, "rho", files["tree"])
    doc = json.loads(out)
    assert code == 0 and abs(doc["rho"] - 3 ** (1 / 3)) < 1e-9 and doc["residual"] < 1e-8
    info = json.loads(run(capsys, "info", files["k4"])[1])
    assert info["matching_counts"] == ["1", "4"] and info["max_degree"] == 3


def test_alphanormal(files, capsys):
    code, out, _ = run(capsys, "alphanormal", files["tree"], "--alpha", "1/3")
    doc = json.loads(out)
    assert code == 0 and doc["checks"] == {"c1_ok": True, "c2_ok": True, "c3_ok": True}
    code, out, _ = run(capsys, "alphanormal", files["tree"], "--from-lambda")
    assert code == 0
    assert run(capsys, "alphanormal", files["tree"], "--alpha", "1/5")[0] == 1
    assert run(capsys, "alphanormal", files["k4"], "--alpha", "1/4")[0] == 2
    assert run(capsys, "alphanormal", files["tree"])[0] == 2


def test_gen_deterministic(capsys):
    argv = ["gen", "kgraph", "--k", "3", "--n", "8", "--m", "6", "--seed", "18446744073709551615"]
    a = run(capsys, *argv)
    b = run(capsys, *argv)
    assert a == b and a[0] == 0
    code, out, _ = run(capsys, "gen", "ktree", "--k", "3", "--m", "4", "--seed", "9")
    assert code == 0 and out.splitlines()[0] == "3 9"
    assert run(capsys, "gen", "kgraph", "--k", "3", "--m", "6", "--seed", "1")[0] == 2


def test_byte_identical_output(files, capsys):
    for argv in (["lambda", files["k4"]], ["roots", files["k4"]], ["bounds", files["k4"]]):
        assert run(capsys, *argv) == run(capsys, *argv)


def test_selftest_filter(capsys):
    code, out, _ = run(capsys, "selftest", "--filter", "bounds")
    doc = json.loads(out)
    assert code == 0 and [c["name"] for c in doc["checks"]] == ["bounds"]


@pytest.mark.slow
def test_selftest_full(capsys):
    code, out, _ = run(capsys, "selftest")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and all(c["status"] == "pass" for c in doc["checks"])


def test_selftest_detects_sabotage(capsys, monkeypatch):
    real = matchpoly.matching_polynomial_recursive

    def broken(h, *a, **kw):
        return real(h, *a, **kw) + SparsePoly({0: 1})

    monkeypatch.setattr(matchpoly, "matching_polynomial_recursive", broken)
    code, out, _ = run(capsys, "selftest", "--filter", "oracle")
    doc = json.loads(out)
    assert code == 1 and doc["failed"] == ["oracle-equivalence"]


def test_console_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "hypermatch.cli", "cyclic", files["k4"]],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["cyclic_index"] == 3
