import io
import json
import subprocess
import sys

import pytest

from hypersym.cli import run
from hypersym.experiments import DEFAULT_SEED


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def pentagon(tmp_path):
    path = tmp_path / "pentagon.hg"
    path.write_text("5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n")
    return str(path)


def test_aut_pentagon(pentagon):
    code, out, _ = call("aut", "--file", pentagon)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "order 10"
    assert all(l.startswith("(") for l in lines[1:]) and len(lines) > 1


def test_bounds_n28():
    code, out, _ = call("bounds", "--n", "28", "--t", "2")
    assert code == 0
    values = dict(l.split()[:2] for l in out.splitlines() if not l.startswith(" "))
    assert abs(float(values["asymptotic_P2"]) - 0.0677) < 5e-4
    assert "union_bound_asymmetry" in values


def test_exceptions_degree9():
    code, out, _ = call("exceptions", "--degree-max", "9")
    assert code == 0
    rows = {l.split("\t")[0]: l for l in out.splitlines()}
    for name in ("F20", "PGL(2,5)", "PGL(2,8)", "PGammaL(2,8)"):
        assert "set-transitive" in rows[name] and "EXCEPTION-CANDIDATE" in rows[name]
    assert "EXCEPTION-CANDIDATE" in rows["F21"]
    assert "[42, 168, 168]" in rows["F21"]


def test_group_info_json():
    code, out, _ = call("group", "info", "--group", "F20", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["result"]["order"] == 20 and d["result"]["k_homogeneous_up_to"] == 2
    assert d["inputs"]["config"]["group"] == "F20"


def test_generator_string_selector():
    code, out, _ = call("orbits", "--group", "(0 1)(2 3)", "--degree", "5")
    assert code == 0 and out.splitlines() == ["0 1", "2 3", "4"]
    code, out, _ = call("stab", "--group", "(1 2 3 4 5)", "--one-based", "--set", "1,2")
    assert code == 0 and out.startswith("order 1")


def test_orbits_lattice_minedge():
    code, out, _ = call("orbits", "--group", "F21", "--k", "3")
    assert code == 0 and out.startswith("3 orbits")
    code, out, _ = call("lattice", "--group", "F21", "--k", "3")
    assert code == 0 and out.splitlines()[-1] == "minimal overgroup orders [42, 168, 168]"
    code, out, _ = call("minedge", "--group", "D5")
    assert code == 0 and out.splitlines()[0] == "k = 2"


def test_catalog_dump_round_trips(tmp_path):
    code, out, _ = call("catalog", "dump")
    assert code == 0
    path = tmp_path / "cat.tsv"
    path.write_text(out)
    code, out2, _ = call("catalog", "dump", "--catalog", str(path))
    assert code == 0 and out2 == out


def test_seeded_json_is_byte_identical():
    argv = ["asymmetry", "--n", "12", "--trials", "2000", "--format", "json"]
    _, a, _ = call(*argv, "--threads", "1")
    _, b, _ = call(*argv, "--threads", "8")
    _, c, _ = call(*argv)
    assert a == b == c
    assert json.loads(a)["seed"] == DEFAULT_SEED


def test_csv_output():
    code, out, _ = call("transversal-asymmetry", "--n", "8", "--trials", "500", "--format", "csv")
    assert code == 0
    header, row = out.splitlines()
    assert header.startswith("experiment,n,t")
    assert row.startswith("transversal-asymmetry,8,2")


def test_output_file(tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = call("rigidity", "--group", "C5", "--k", "2", "--trials", "10",
                        "--format", "json", "--output", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["counts"]["aut_equal"] == 0


@pytest.mark.parametrize("argv", [
    ["asymmetry", "--n", "10", "--bogus"],
    ["nonsense"],
    [],
    ["group", "info", "--group", "NoSuchGroup"],
    ["asymmetry", "--n", "5", "--t", "3"],
    ["aut", "--file", "/nonexistent/file.hg"],
    ["stab", "--group", "C5", "--set", "0,9"],
])
def test_validation_errors_exit_1(argv):
    code, _, err = call(*argv)
    assert code == 1 and err


def test_unknown_flag_prints_usage():
    _, _, err = call("bounds", "--n", "4", "--frobnicate")
    assert "usage:" in err


def test_cap_exceeded_exit_2(pentagon):
    code, _, err = call("aut", "--file", pentagon, "--node-cap", "1")
    assert code == 2 and "cap" in err
    code, _, _ = call("asymmetry", "--n", "9", "--exact")
    assert code == 2


def test_console_entry_point(pentagon):
    proc = subprocess.run([sys.executable, "-m", "hypersym", "aut", "--file", pentagon],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("order 10")
    proc = subprocess.run([sys.executable, "-m", "hypersym", "bounds", "--bad"],
                          capture_output=True, text=True)
    assert proc.returncode == 1
