import io
import json
import subprocess
import sys

import pytest

from knotconc import obstruction
from knotconc.cli import EXIT_INDETERMINATE, EXIT_INPUT, EXIT_OK, parse_poly, run
from knotconc.knotfile import (bundled_knot_files, data_path, dump_knot, load_knot,
                               record_from_json, record_to_json, validate)

from conftest import DATA


def call(*argv):
    out = io.StringIO()
    code, env = run([str(a) for a in argv], stdout=out)
    return code, env, out.getvalue()


def call_json(*argv):
    code, env, text = call("--format", "json", *argv)
    assert json.loads(text) == env
    return code, env


# -- documented examples --------------------------------------------------------------


def test_order2_8_13():
    code, env = call_json("order2", DATA / "8_13.json")
    assert code == EXIT_OK
    assert env["result"]["verdict"] == "obstructed"
    validate(env["result"], "obstruction_report")


def test_lens_sigma():
    code, env = call_json("lens", "sigma", "--k", 3, "--r", 6)
    assert code == EXIT_OK and env["result"]["value"] == "1/13"
    code, _, text = call("lens", "sigma", "--k", 3, "--r", 6)
    assert code == EXIT_OK and "1/13" in text


def test_missing_file():
    code, env = call_json("twisted", "missing.json", "--cover", 2)
    assert code == EXIT_INPUT
    assert "file not found" in env["error"]["message"]
    assert "result" not in env


# -- exit codes and errors -------------------------------------------------------------


@pytest.mark.parametrize("argv", [
    ["bogus"],
    [],
    ["lens"],
    ["lens", "sigma", "--k", "2", "--r", "1"],
    ["lens", "sigma", "--k", "3", "--r", "13"],
    ["lens", "infinite-order", "--k", "3", "--n", "3"],
    ["lens", "independence", "--pairs", "3:2,3:2"],
    ["lens", "independence", "--pairs", "3"],
    ["fox-milnor", "--poly", "0,0"],
    ["cover-homology", "3_1", "--n", "3", "--route", "seifert"],
])
def test_input_errors(argv):
    code, env = call_json(*argv)
    assert code == EXIT_INPUT
    assert env["error"]["message"] and env["exit_code"] == EXIT_INPUT


def test_malformed_file(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"name": "x"}')
    assert call_json("alex", bad)[0] == EXIT_INPUT
    bad.write_text("not json")
    assert call_json("alex", bad)[0] == EXIT_INPUT


def test_bad_prime_budget(monkeypatch):
    monkeypatch.setenv("KNOTCONC_PRIME_BUDGET", "0")
    assert call_json("order2", DATA / "8_13.json")[0] == EXIT_INPUT


def test_indeterminate_exit(monkeypatch):
    monkeypatch.setattr(obstruction, "KRONECKER_BUDGET", 1)
    code, env = call_json("fox-milnor", "--poly", "1,-1,1,-1,1")
    assert code == EXIT_INDETERMINATE
    assert env["result"]["verdict"] == "indeterminate"


def test_fox_milnor_cli():
    code, env = call_json("fox-milnor", "--poly", "2,-5,2")
    assert code == EXIT_OK and env["result"]["verdict"] == "passes"
    code, env = call_json("fox-milnor", "--poly", "3,-7,3")
    assert code == EXIT_OK and env["result"]["verdict"] == "fails"
    assert parse_poly("1 -1 1") == parse_poly("1,-1,1")


# -- other subcommands -----------------------------------------------------------------


def test_alex():
    code, env = call_json("alex", DATA / "3_1.json")
    assert code == EXIT_OK and env["result"]["determinant"] == "3"
    code, env = call_json("alex", "T_3")
    assert env["result"]["determinant"] == "13"


def test_cover_homology():
    code, env = call_json("cover-homology", DATA / "8_13.json")
    assert code == EXIT_OK and env["result"]["order"] == 29
    code, env = call_json("cover-homology", DATA / "8_13.json", "--n", 3)
    assert env["result"]["order"] == 256


def test_metabolizers():
    code, env = call_json("metabolizers", DATA / "8_13.json")
    gens = [m["generators"] for m in env["result"]["metabolizers"]]
    assert code == EXIT_OK and gens == [[[1, 12]], [[1, 17]]]
    code, env = call_json("metabolizers", DATA / "3_1.json")
    assert code == EXIT_OK and env["result"]["metabolizers"] == []


def test_twisted_text_output():
    code, _, text = call("twisted", DATA / "3_1.json", "--cover", 2, "--modulus", 3,
                         "--character", 1)
    assert code == EXIT_OK and "(t - 1)^" in text


def test_lens_certificates():
    code, env = call_json("lens", "infinite-order", "--k", 3, "--n", 2)
    assert code == EXIT_OK and env["result"]["sigma1_tau_upper_bound"] == "-2/13"
    validate(env["result"], "order_certificate")
    code, env = call_json("lens", "independence", "--pairs", "3:2,4:2")
    assert env["result"]["verdict"] == "not-slice"
    validate(env["result"], "independence_certificate")


# -- determinism and round trips -------------------------------------------------------


@pytest.mark.parametrize("argv", [
    ["twisted", DATA / "8_13.json", "--cover", 2, "--modulus", 29, "--character", 1],
    ["order2", "T_2"],
    ["lens", "independence", "--pairs", "3:2,4:2"],
])
def test_payload_byte_identical(argv):
    a, b = call_json(*argv)[1], call_json(*argv)[1]
    for env in (a, b):
        env.pop("timing")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


@pytest.mark.parametrize("name", bundled_knot_files())
def test_bundled_round_trip(name, tmp_path):
    rec = load_knot(data_path(name))
    obj = record_to_json(rec)
    validate(obj, "knotfile")
    again = record_from_json(obj)
    assert record_to_json(again) == obj
    assert again.validate() == rec.validate()
    path = tmp_path / name
    dump_knot(rec, path)
    assert record_to_json(load_knot(path)) == obj


def test_repo_data_matches_bundled():
    for name in bundled_knot_files():
        assert json.loads((DATA / name).read_text()) == json.loads(data_path(name).read_text())


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "knotconc.cli", "lens", "sigma",
                           "--k", "3", "--r", "7"], capture_output=True, text=True)
    assert proc.returncode == 0 and "1/13" in proc.stdout
