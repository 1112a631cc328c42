import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from artinhodge.cli import run

DATA = Path(__file__).parent / "data"

GOLDEN = [
    ["algebra", "check", "--file", "dual.json"],
    ["algebra", "check", "--file", "two_vars.json"],
    ["weil", "restrict", "--algebra", "dual.json", "--module", "module_free.json"],
    ["weil", "restrict", "--algebra", "eps3.json"],
    ["module", "rank", "--map", "diag1eps.json", "--algebra", "dual.json"],
    ["module", "rank", "--map", "diag1one.json", "--algebra", "dual.json"],
    ["ss", "compute", "--filtered", "eps_complex.json", "--pages", "3"],
    ["ss", "compute", "--filtered", "identity_square.json"],
    ["hodge", "verify", "--structure", "elliptic.json"],
    ["hodge", "verify", "--structure", "elliptic_family.json"],
    ["hodge", "decompose", "--structure", "elliptic_family.json"],
    ["snc", "mhs", "--model", "banana_model.json", "--k", "1", "--algebra", "dual.json"],
    ["snc", "mhs", "--model", "triangle_model.json", "--k", "2"],
    ["snc", "pullback-rank", "--model", "banana_model.json", "--ambient", "banana_ambient.json",
     "--p", "1", "--q", "1", "--algebra", "dual.json"],
    ["demo", "wedge", "--algebra", "qi.json"],
    ["demo", "banana", "--algebra", "dual.json"],
    ["demo", "triangle", "--algebra", "dual.json"],
]


def with_data(argv):
    flags = {"--file", "--algebra", "--module", "--map", "--filtered", "--structure", "--model",
             "--ambient"}
    out = []
    for i, a in enumerate(argv):
        out.append(str(DATA / a) if i and argv[i - 1] in flags else a)
    return out


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(with_data(argv) + ["--json-only"], out, err)
    return code, json.loads(out.getvalue()), err.getvalue()


def stable(report):
    report = dict(report)
    report.pop("timing")
    return json.dumps(report, sort_keys=True)


@pytest.mark.parametrize("argv", GOLDEN, ids=lambda a: "_".join(a[:2]) + "_" + Path(a[3]).stem)
def test_golden_inputs_pass_and_are_deterministic(argv):
    code, first, err = invoke(argv)
    assert code == 0, first
    assert first["exit_code"] == 0 and err == ""
    _, second, _ = invoke(argv)
    assert stable(first) == stable(second)


def test_demo_banana_reports_weight_zero_h1():
    _, rep, _ = invoke(["demo", "banana", "--algebra", "dual.json"])
    h1 = rep["result"]["cohomology"][1]
    assert h1["rank"] == 1 and h1["weights"] == {"0": 1}
    assert rep["result"]["betti"] == [1, 1, 2]


def test_not_constant_rank_is_a_verdict():
    code, rep, _ = invoke(["module", "rank", "--map", "diag1eps.json", "--algebra", "dual.json"])
    assert code == 0
    assert rep["result"]["verdict"] == "not_constant" and rep["result"]["coker_free"] is False


def test_nonlocal_algebra_is_an_input_error():
    code, rep, _ = invoke(["algebra", "check", "--file", "bad.json"])
    assert code == 1 and rep["error"]["type"] == "NotLocal"


def test_invalid_structure_is_a_verification_failure():
    code, rep, _ = invoke(["hodge", "verify", "--structure", "not_hodge.json"])
    assert code == 2
    assert [c["name"] for c in rep["checks"] if not c["pass"]] == ["fiber_classical_mhs"]


def test_missing_file_prints_schema(tmp_path):
    out, err = io.StringIO(), io.StringIO()
    code = run(["module", "rank", "--map", str(tmp_path / "nope.json")], out, err)
    assert code == 1
    assert "expected input shape" in err.getvalue()
    assert json.loads(out.getvalue())["error"]["type"] == "InputError"


def test_malformed_json(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{not json")
    code, rep, _ = invoke(["algebra", "check", "--file", str(p)])
    assert code == 1


def test_selfcheck():
    code, rep, _ = invoke(["selfcheck", "--seed", "7", "--trials", "5"])
    assert code == 0 and rep["result"]["trials"] == 5


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "artinhodge", "demo", "wedge"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["betti"] == [1, 0, 2]
    assert "all checks passed" in proc.stderr
