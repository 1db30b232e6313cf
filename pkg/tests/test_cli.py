import json
import subprocess
import sys

import pytest

from hyperblow import cli
from hyperblow.extremal import VerificationReport
from hyperblow.hypergraph import sunflower, write_hypergraph


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def fields(text):
    return dict(line.split(" ", 1) for line in text.strip().splitlines())


# ---- rho


def test_rho_complete(capsys):
    code, out, _ = run(capsys, "rho", "--complete", "4", "3")
    assert code == 0
    assert float(fields(out)["rho"]) == pytest.approx(3.0, rel=1e-10)


def test_rho_file(capsys, tmp_path):
    path = tmp_path / "edge.hg"
    path.write_text("# one edge\n3 3 1\n1 2 3\n")
    code, out, _ = run(capsys, "rho", "--file", str(path), "--format", "json")
    assert code == 0
    assert json.loads(out)["rho"] == pytest.approx(1.0, rel=1e-10)


def test_rho_parts(capsys):
    code, out, _ = run(capsys, "rho", "--sunflower", "2", "2", "3", "--parts", "1,1,3,1,4")
    assert code == 0
    assert float(fields(out)["rho"]) == pytest.approx(25 ** (1 / 3), rel=1e-9)
    code, out, _ = run(capsys, "rho", "--sunflower", "2", "2", "3", "--parts", "1,1,1,3,4")
    assert float(fields(out)["rho"]) == pytest.approx(145 ** (1 / 3), rel=1e-9)


def test_rho_vector_and_formats(capsys):
    code, out, _ = run(capsys, "rho", "--turan", "3", "3", "6", "--vector", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["schema"] == 1 and len(d["vector"]) == 6
    assert d["rho"] == pytest.approx(4.0, rel=1e-10)
    code, out, _ = run(capsys, "rho", "--complete", "5", "2", "--format", "csv")
    header, row = out.strip().splitlines()
    assert header.split(",")[:2] == ["schema", "rho"]
    assert float(row.split(",")[1]) == pytest.approx(4.0, rel=1e-10)


def test_rho_with_parts_expands_vector(capsys):
    code, out, _ = run(capsys, "rho", "--complete", "3", "3", "--parts", "2,1,1", "--vector", "--format", "json")
    assert len(json.loads(out)["vector"]) == 4


@pytest.mark.parametrize("argv", [
    ["rho", "--complete", "2", "3"],
    ["rho", "--sunflower", "2", "3", "3"],
    ["rho", "--complete", "4", "3", "--parts", "1,2"],
    ["rho", "--complete", "4", "3", "--parts", "1,x"],
    ["rho", "--complete", "4", "3", "--tol", "-1"],
    ["rho"],
    ["rho", "--complete", "4", "3", "--turan", "3", "3", "6"],
    ["rho", "--file", "/nonexistent/file.hg"],
    ["nope"],
])
def test_bad_input_exits_1(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = cli.main(argv)
        raise SystemExit(code)
    assert exc.value.code == 1


def test_bad_file_contents_exit_1(capsys, tmp_path):
    path = tmp_path / "bad.hg"
    path.write_text("3 4 1\n1 2\n")
    code, _, err = run(capsys, "rho", "--file", str(path))
    assert code == 1 and "error" in err


def test_nonconvergence_exits_2(capsys):
    code, out, _ = run(capsys, "rho", "--sunflower", "3", "2", "3", "--max-iter", "1")
    assert code == 2
    assert fields(out)["converged"] == "False"
    code, _, _ = run(capsys, "extremal", "--sunflower", "2", "2", "3", "--n", "8", "--max-iter", "1")
    assert code == 2


# ---- sunflower-rho


@pytest.mark.parametrize("params, parts, want", [
    (("2", "1", "3"), "1,1,1,1", 2 ** (2 / 3)),
    (("1", "2", "3"), "2,2,2", 4.0),
    (("3", "2", "5"), "1,1,1,1,1,1,1,1,1", 3 ** (3 / 5)),
])
def test_sunflower_rho_examples(capsys, params, parts, want):
    code, out, _ = run(capsys, "sunflower-rho", "--sunflower", *params, "--parts", parts)
    assert code == 0
    assert float(fields(out)["rho"]) == pytest.approx(want, rel=1e-12)


def test_sunflower_rho_check(capsys):
    code, out, _ = run(capsys, "sunflower-rho", "--sunflower", "2", "2", "3", "--parts", "1,1,3,1,4",
                       "--check", "--format", "json")
    d = json.loads(out)
    assert code == 0 and abs(d["difference"]) < 1e-8 * d["rho"]


@pytest.mark.parametrize("argv", [
    ["sunflower-rho", "--sunflower", "2", "3", "3", "--parts", "1,1,1,1"],
    ["sunflower-rho", "--sunflower", "2", "2", "3", "--parts", "1,1,1"],
    ["sunflower-rho", "--sunflower", "2", "2", "3", "--parts", "1,1,1,0,1"],
])
def test_sunflower_rho_bad_input(capsys, argv):
    assert cli.main(argv) == 1


# ---- extremal


def test_extremal_complete(capsys):
    code, out, _ = run(capsys, "extremal", "--complete", "3", "3", "--n", "6", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["evaluations"] == 10
    assert sorted(tuple(x["parts"]) for x in d["minima"]) == [(1, 1, 4), (1, 4, 1), (4, 1, 1)]
    assert [x["parts"] for x in d["maxima"]] == [[2, 2, 2]]


def test_extremal_sunflower(capsys):
    code, out, _ = run(capsys, "extremal", "--sunflower", "2", "2", "3", "--n", "10", "--format", "json")
    d = json.loads(out)
    assert code == 0
    assert [1, 1, 3, 1, 4] in [x["parts"] for x in d["minima"]]
    assert [3, 1, 1, 2, 3] in [x["parts"] for x in d["maxima"]]
    assert d["maxima"][0]["rho"] == pytest.approx(333 ** (1 / 3), rel=1e-9)


def test_extremal_single_composition(capsys):
    code, out, _ = run(capsys, "extremal", "--complete", "3", "3", "--n", "3")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 3 and "1,1,1" in lines[1] and "1,1,1" in lines[2]


def test_extremal_n_too_small(capsys):
    code, _, err = run(capsys, "extremal", "--complete", "4", "3", "--n", "3")
    assert code == 1 and "error" in err


def test_extremal_json_is_deterministic(capsys):
    argv = ["extremal", "--sunflower", "2", "2", "3", "--n", "11", "--format", "json"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv, "--workers", "2")
    assert first == second


def test_extremal_closed_evaluator(capsys):
    code, out, _ = run(capsys, "extremal", "--sunflower", "2", "2", "3", "--n", "9", "--evaluator", "closed",
                       "--format", "csv")
    assert code == 0 and out.startswith("family,n,extreme,parts,rho")


# ---- verify


def test_verify_theorem5(capsys):
    code, out, _ = run(capsys, "verify", "theorem5", "--t", "3,4", "--r", "3", "--n-max", "9")
    assert code == 0
    assert out.strip().splitlines()[-1] == "theorem5: PASS"


def test_verify_lemma7(capsys):
    code, out, _ = run(capsys, "verify", "lemma7", "--theta-max", "20")
    assert code == 0


def test_verify_scaling(capsys):
    code, out, _ = run(capsys, "verify", "scaling", "--k", "2,3", "--count", "10", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["passed"] and len(d["reports"]) == 20


@pytest.mark.parametrize("suite, extra", [
    ("theorem41", ["--m", "2", "--r", "3"]),
    ("theorem9", ["--n-max", "9"]),
    ("lemma4", ["--count", "10"]),
    ("lemma8", ["--theta-max", "12"]),
    ("scan", []),
])
def test_verify_other_suites(capsys, suite, extra):
    code, out, _ = run(capsys, "verify", suite, *extra)
    assert code == 0, out


def test_verify_failure_exits_3(capsys, monkeypatch):
    def failing(*a, **k):
        rep = VerificationReport("lemma4", {"case": 1})
        rep.check("strict increase", False, "before=2 after=1")
        yield rep

    monkeypatch.setattr(cli.suites, "lemma4", failing)
    code, out, _ = run(capsys, "verify", "lemma4")
    assert code == 3
    assert "[FAIL] lemma4 case=1" in out and "before=2 after=1" in out


def test_file_round_trip_through_cli(capsys, tmp_path):
    path = tmp_path / "sf.hg"
    write_hypergraph(sunflower(3, 2, 4), path)
    _, a, _ = run(capsys, "rho", "--file", str(path), "--format", "json")
    _, b, _ = run(capsys, "rho", "--sunflower", "3", "2", "4", "--format", "json")
    assert a == b


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hyperblow", "rho", "--complete", "4", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "rho 3.0" in proc.stdout
