import io
import json
import subprocess
import sys

import pytest

from abpkit.cli import main
from abpkit.jsonio import dumps, fixture_path, poly_to_json
from abpkit.poly import Polynomial


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def fx(name):
    return str(fixture_path(name))


@pytest.fixture
def xy_poly(tmp_path):
    x, y = Polynomial.variables(2)
    p = tmp_path / "xy.json"
    p.write_text(dumps(poly_to_json(x * y)))
    return str(p)


def test_poly_eval():
    assert run("poly", "eval", "--poly", fx("P_1_3.json"), "--point", "1,2,3") == (0, "19\n")


def test_expand_check():
    fig = fx("figure1_abp.json")
    code, _ = run("family", "emit", "--name", "fig1")
    assert code == 0
    code, out = run("abp", "expand", "--abp", fig, "--format", "json")
    assert code == 0 and json.loads(out)["vars"] == 2


def test_abp_validate_and_eval(tmp_path):
    assert run("abp", "validate", "--abp", fx("figure1_abp.json"))[0] == 0
    bad = json.loads(fixture_path("figure1_abp.json").read_text())
    bad["edges"][0]["to"] = 9
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(bad))
    code, out = run("abp", "validate", "--abp", str(p), "--format", "json")
    assert code == 1 and json.loads(out)["status"] == "failed"
    code, out = run("abp", "eval", "--abp", fx("figure1_abp.json"), "--point", "1,1")
    assert code == 0 and out.strip() == "-3/2"


def test_family_emit_and_decomp(tmp_path):
    out_poly = tmp_path / "S.json"
    assert run("family", "emit", "--name", "S", "--n", "4", "--d", "5", "--out", str(out_poly))[0] == 0
    assert json.loads(out_poly.read_text()) == json.loads(fixture_path("S_4_5.json").read_text())
    dec = tmp_path / "dec.json"
    assert run("decomp", "make", "--kind", "shioda", "--n", "4", "--d", "5", "--out", str(dec))[0] == 0
    assert run("decomp", "verify", "--poly", str(out_poly), "--decomp", str(dec))[0] == 0
    dec2 = tmp_path / "dec2.json"
    assert run("decomp", "make", "--kind", "from-subspace", "--poly", str(out_poly),
               "--forms", fx("A0_4.json"), "--out", str(dec2))[0] == 0
    assert run("decomp", "verify", "--poly", str(out_poly), "--decomp", str(dec2))[0] == 0
    assert run("decomp", "verify", "--poly", fx("P_1_3.json"), "--decomp", str(dec))[0] == 1


def test_search_finite_field(xy_poly):
    code, out = run("search", "subspaces", "--poly", xy_poly, "--codim", "1", "--field", "Fp:2",
                    "--format", "json")
    lines = [json.loads(s) for s in out.splitlines()]
    assert code == 0 and len(lines) == 3
    assert lines[-1]["status"] == "found" and lines[-1]["heuristic"] is True and lines[-1]["total"] == 3
    code, _ = run("search", "subspaces", "--poly", fx("P_1_3.json"), "--codim", "1", "--field", "Fp:2")
    assert code == 1


def test_search_budget_and_point():
    code, out = run("search", "subspaces", "--poly", fx("S_4_5.json"), "--codim", "4", "--field", "Fp:3",
                    "--budget", "50", "--format", "json")
    assert code == 3 and json.loads(out.splitlines()[-1])["status"] == "budget-exceeded"
    code, out = run("search", "subspaces", "--poly", fx("S_4_5.json"), "--codim", "4", "--field", "Fp:2",
                    "--through-point", "0,0,0,0,1,0", "--format", "json")
    assert code == 0


def test_search_refute(xy_poly):
    assert run("search", "subspaces", "--poly", fx("P_1_3.json"), "--codim", "1", "--refute-rational")[0] == 1
    assert run("search", "subspaces", "--poly", xy_poly, "--codim", "1", "--refute-rational")[0] == 4


def test_sing_compute(tmp_path):
    code, out = run("sing", "compute", "--poly", fx("P_1_3.json"), "--format", "json")
    assert code == 0 and json.loads(out)["codim"] == 2
    claim = tmp_path / "claim.json"
    claim.write_text(json.dumps({"vars": 3, "forms": [["1", "0", "0"], ["0", "0", "1"]]}))
    assert run("sing", "compute", "--poly", fx("P_1_3.json"), "--claim", str(claim))[0] == 0
    claim.write_text(json.dumps({"vars": 3, "forms": [["1", "0", "0"]]}))
    assert run("sing", "compute", "--poly", fx("P_1_3.json"), "--claim", str(claim))[0] == 1


def test_chain_commands(tmp_path):
    ch = tmp_path / "chain.json"
    code, out = run("chain", "extract", "--abp", fx("figure1_abp.json"), "--format", "json")
    assert code == 0
    ch.write_text(out)
    code, out = run("chain", "synthesize", "--chain", str(ch), "--format", "json")
    assert code == 0 and json.loads(out)["widths"] == [1, 2, 2, 1]
    assert run("chain", "synthesize", "--chain", fx("figure1_chain.json"), "--minimize")[0] == 0


def test_bounds_compute():
    code, out = run("bounds", "compute", "--family", "S", "--n", "4", "--d", "5", "--json")
    assert code == 0 and json.loads(out)["total"] == 14
    code, out = run("bounds", "compute", "--family", "P", "--n", "5", "--d", "4", "--format", "json")
    assert json.loads(out)["total"] == 15


def test_usage_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    assert run("poly", "eval", "--poly", str(bad), "--point", "1")[0] == 2
    assert run("poly", "eval", "--poly", str(tmp_path / "missing.json"), "--point", "1")[0] == 2
    assert run("poly", "eval", "--poly", fx("P_1_3.json"), "--point", "1,2")[0] == 2
    assert run("bounds", "compute", "--family", "S", "--n", "3", "--d", "5")[0] == 2
    assert run("nonsense")[0] == 2
    assert run("search", "subspaces", "--poly", fx("P_1_3.json"), "--codim", "1")[0] == 2


def test_manifest(tmp_path):
    m = tmp_path / "m.json"
    code, out = run("poly", "eval", "--poly", fx("P_1_3.json"), "--point", "1,2,3", "--manifest", str(m))
    data = json.loads(m.read_text())
    assert data["exit_status"] == code == 0
    assert list(data["inputs"]) == [fx("P_1_3.json")]
    assert set(data) >= {"command", "version", "result_sha256", "elapsed_s"}


def test_repro_deterministic():
    a = run("repro", "all", "--format", "json")
    b = run("repro", "all", "--format", "json")
    assert a == b
    report = json.loads(a[1])
    assert report["total"] == 10 and "elapsed" not in json.dumps(report)


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "abpkit.cli", "bounds", "compute", "--family", "powersum",
                          "--n", "2", "--d", "3"], capture_output=True, text=True)
    assert res.returncode == 0 and "total" in res.stdout
