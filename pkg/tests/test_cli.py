import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from ellval.cli import main

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def records(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


@pytest.fixture
def cfg(tmp_path):
    def write(text):
        p = tmp_path / "job.cfg"
        p.write_text(text)
        return str(p)
    return write


def test_analyze_records():
    code, out, _ = run("analyze", "--config", str(CONFIGS / "q5.cfg"), "--format", "records")
    assert code == 0
    rows = records(out)
    assert [r["gamma"] for r in rows] == ["0", "3/4", "3/2"]
    assert all(r["delta_val"] == "9" and r["gamma_max"] == "3/2" and r["minimal"] for r in rows)


def test_analyze_human():
    code, out, _ = run("analyze", "--config", str(CONFIGS / "q5.cfg"))
    assert code == 0
    assert "val(discriminant) 9" in out
    assert "minimal          true (m=0)" in out


def test_classify_accepts_and_rejects(cfg):
    code, out, _ = run("classify", "--config", str(CONFIGS / "q5.cfg"), "--format", "records")
    assert code == 0
    assert records(out)[0]["observed"] == "gamma=3/2"
    path = cfg("backend = padic\np = 5\nA = 5^3\nB = 5^6\na_val = 2\nexpect = REJECT(GAMMA_EXCEEDS_MAX)\n")
    code, out, _ = run("classify", "--config", path, "--format", "records")
    assert code == 0
    rec = records(out)[0]
    assert rec["observed"] == "REJECT(GAMMA_EXCEEDS_MAX)" and rec["pass"]


def test_classify_expectation_mismatch_fails(cfg):
    path = cfg("backend = padic\np = 5\nA = 5^3\nB = 5^6\na_val = 2\nexpect = gamma=2\n")
    code, _, _ = run("classify", "--config", path)
    assert code == 1


def test_member(cfg):
    code, out, _ = run("member", "--config", str(CONFIGS / "q5.cfg"), "--format", "records")
    assert code == 0
    rec = records(out)[0]
    assert rec["detail"] == {"stab": True, "fast": True}
    path = cfg("A = t^2\nB = 0\npoint = (0, 0)\ngamma = 0\nexpect = false\n")
    code, out, _ = run("member", "--config", path, "--format", "records")
    assert code == 0 and records(out)[0]["observed"] == "false"


def test_minimalize(cfg):
    path = cfg("backend = padic\np = 5\nA = 5^4\nB = 5^6\nexpect = m=1\n")
    code, out, _ = run("minimalize", "--config", path, "--format", "records")
    assert code == 0
    rec = records(out)[0]
    assert rec["detail"]["A"] == "1" and rec["detail"]["B"] == "1"


def test_lift(cfg):
    path = cfg("backend = padic\np = 5\nA = 0\nB = 17\nx0 = 2\nexpect = (2, 5)\n")
    code, out, _ = run("lift", "--config", path)
    assert code == 0 and "PASS" in out


def test_verify_eq1_and_mutation():
    code, out, _ = run("verify", "--config", str(CONFIGS / "q5.cfg"), "--suite", "eq1", "--format", "records")
    assert code == 0 and records(out)[0]["observed"] == "identity"
    code, out, _ = run("verify", "--config", str(CONFIGS / "eq1_mutated.cfg"), "--format", "records")
    assert code == 1
    rec = records(out)[0]
    assert rec["observed"] == "mismatch at x1"
    assert list(rec) == ["suite", "case", "expected", "observed", "pass", "status", "detail"]


def test_verify_precision_exit(cfg):
    path = cfg("precision = 3\nA = t^2\nB = t^3\nsuites = membership\nsamples = 10\nseed = 1\n")
    code, out, _ = run("verify", "--config", path, "--format", "records")
    assert code == 3
    assert any(r["status"] == "precision" for r in records(out))


def test_verify_fail_beats_precision(cfg):
    path = cfg("precision = 3\nA = t^2\nB = t^3\nsuites = eq1, membership\neq1_mutation = x1\nsamples = 10\nseed = 1\n")
    code, _, _ = run("verify", "--config", path)
    assert code == 1


def test_verify_is_deterministic_across_workers():
    args = ("verify", "--config", str(CONFIGS / "q5.cfg"), "--suite", "membership,chain",
            "--samples", "8", "--format", "records")
    code1, out1, _ = run(*args)
    code4, out4, _ = run(*args, "--workers", "4")
    assert code1 == code4 == 0
    assert out1 == out4


def test_output_file(tmp_path):
    target = tmp_path / "out.jsonl"
    code, out, _ = run("analyze", "--config", str(CONFIGS / "q5.cfg"), "--format", "records",
                       "--output", str(target))
    assert code == 0 and out == ""
    assert len(records(target.read_text())) == 3


@pytest.mark.parametrize("text,where", [
    ("A = t^\nB = 1\n", ":1:7:"),
    ("A = 1\nB = 1\nbogus = 3\n", ":3:1:"),
    ("A = 1\nA = 2\n", ":2:1:"),
    ("curves = a, b\na.A = 1\n", ":1:10:"),
    ("no equals sign\n", ":1:1:"),
    ("curves = a\nb.A = 1\n", ":2:1:"),
])
def test_config_errors_report_position(cfg, text, where):
    code, _, err = run("analyze", "--config", cfg(text))
    assert code == 2
    assert where in err


def test_point_errors_report_position(cfg):
    code, _, err = run("member", "--config", cfg("A = 1\nB = 1\npoint = (1, 1)\n"))
    assert code == 2 and ":3:9:" in err and "not on curve" in err
    code, _, err = run("member", "--config", cfg("A = 1\nB = 1\npoint = (1, t^)\n"))
    assert code == 2 and ":3:15:" in err and "at column" not in err


def test_usage_errors(cfg):
    assert run("verify", "--config", str(CONFIGS / "q5.cfg"), "--suite", "nope")[0] == 2
    assert run("frobnicate", "--config", "x")[0] == 2
    assert run("analyze", "--config", "/nonexistent/job.cfg")[0] == 2
    assert run()[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ellval", "analyze", "--config", str(CONFIGS / "q5.cfg"),
                           "--format", "records"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert len(records(proc.stdout)) == 3
