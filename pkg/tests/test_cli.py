import json
import shutil
import subprocess

import pytest

from mhyperg.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_jack_text_output(capsys):
    code, out, _ = run(capsys, "jack", "--lambda", "2,1", "--alpha", "2", "--n", "3")
    assert code == 0
    assert out.splitlines() == ["m[2,1]\t1/1", "m[1,1,1]\t3/2"]


def test_jack_power_sum_json(capsys):
    code, out, _ = run(capsys, "jack", "--lambda", "2", "--alpha", "1", "--basis", "p", "--json")
    assert code == 0
    assert json.loads(out)["coeffs"] == {"[2]": "1/2", "[1,1]": "1/2"}


def test_pfq_json(capsys):
    code, out, _ = run(capsys, "pfq", "--alpha", "2", "--x", "0.1,0.2", "--json")
    data = json.loads(out)
    assert code == 0 and set(data) == {"value", "tail", "degrees_used"}
    assert data["value"] == pytest.approx(2.718281828459045 ** 0.3, rel=1e-14)


def test_ortho_exact_evaluation(capsys):
    code, out, _ = run(capsys, "ortho", "--family", "hermite", "--lambda", "3", "--alpha", "2", "--n", "1", "--eval", "1")
    assert code == 0 and json.loads(out)["value"] == "-4/1"


@pytest.mark.parametrize("op", ["E_ab", "E_hermite", "E_laguerre", "E_laplace", "box2", "eps2"])
def test_opcheck_passes(capsys, op):
    code, out, _ = run(capsys, "opcheck", "--op", op, "--lambda", "2,1", "--n", "2", "--alpha", "1/2")
    assert code == 0 and json.loads(out)["status"] == "pass"


def test_mc_exit_codes(capsys):
    code, out, _ = run(capsys, "mc", "--check", "selberg", "--lambda", "1", "--samples", "50000", "--json")
    assert code == 0 and json.loads(out)["verdict"] == "pass"
    code, out, _ = run(capsys, "mc", "--check", "hankel-kernel", "--a", "2", "--y", "1,2", "--z", "0.3,0.1",
                       "--samples", "20000", "--max-degree", "20", "--json")
    assert code == 1 and json.loads(out)["verdict"] == "inconclusive"


def test_usage_errors_exit_two(capsys):
    assert run(capsys, "run-suite", "--suite", "nope")[0] == 2
    assert run(capsys, "jack", "--lambda", "2,1", "--alpha", "0")[0] == 2
    assert run(capsys, "run-suite", "--suite", "ortho", "--n", "")[0] == 2
    assert run(capsys, "ortho", "--family", "jacobi", "--lambda", "1", "--n", "2", "--a", "1")[0] == 2
    assert run(capsys, "jack", "--lambda", "1,2")[0] == 2
    assert run(capsys)[0] == 2


def test_run_suite_body_is_deterministic(capsys, tmp_path):
    args = ["run-suite", "--suite", "operators", "--alpha", "2", "--n", "2", "--max-degree", "3"]
    outs = []
    for i in range(2):
        path = tmp_path / f"out{i}.json"
        assert run(capsys, *args, "--out", str(path))[0] == 0
        data = json.loads(path.read_text())
        assert data["header"]["tool"] == "mhyperg"
        data.pop("header")
        outs.append(data)
    assert outs[0] == outs[1]
    assert outs[0]["summary"] == {"pass": len(outs[0]["rows"])}


def test_emit_table_csv(capsys):
    code, out, _ = run(capsys, "emit-table", "--kind", "binomials", "--max-size", "2", "--alpha", "2", "--csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "binom,lambda,mu"
    assert "2/1,[2],[1]" in lines


def test_emit_table_symbolic_jacobi(capsys):
    code, out, _ = run(capsys, "emit-table", "--kind", "jacobi-c", "--max-size", "2", "--alpha", "1")
    rows = json.loads(out)["rows"]
    entry = next(r for r in rows if r["lambda"] == "[1]" and r["mu"] == "[]")
    assert code == 0 and entry["c"] == "1/C"


@pytest.mark.skipif(shutil.which("mhyperg") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["mhyperg", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and "mhyperg" in res.stdout
