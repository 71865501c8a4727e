import json

import pytest

import remixed.cli as cli
from remixed import __version__
from remixed.formulas import HitIndex, q_hit
from remixed.qcalc import QPoly


def run(capsys, *argv):
    rc = cli.main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def envelope(out):
    env = json.loads(out)
    assert set(env) == {"command", "inputs", "result", "version"}
    assert env["version"] == __version__
    return env


def test_eval_envelope(capsys):
    rc, out, err = run(capsys, "eval", "3,0,0,2,0")
    assert rc == 0 and err == ""
    env = envelope(out)
    assert env["command"] == "eval"
    assert env["result"]["method"] == "lukasiewicz"
    assert env["result"]["poly"] == {"coeffs": ["1", "2", "3", "4", "3", "2", "1"]}
    assert env["result"]["crosscheck"] == "skip"
    assert "pretty" not in env["result"]


def test_eval_at_rational(capsys):
    rc, out, _ = run(capsys, "eval", "1,1,1", "--q", "2")
    env = envelope(out)
    assert rc == 0
    assert env["result"]["value"] == "21"
    assert "poly" not in env["result"]
    rc, out, _ = run(capsys, "eval", "1,1,1", "--q", "1/2")
    assert json.loads(out)["result"]["value"] == "21/8"


def test_eval_crosscheck_and_pretty(capsys):
    rc, out, _ = run(capsys, "eval", "0,3,0,2,0", "--crosscheck", "--pretty")
    env = envelope(out)
    assert rc == 0
    assert env["result"]["crosscheck"] == "pass"
    assert env["result"]["pretty"] == "[2]^3 [4]^2 - [6] [3]^2"
    assert env["result"]["method"] == "almost_lukasiewicz"


def test_eval_methods(capsys):
    for method in ("exact", "induction"):
        rc, out, _ = run(capsys, "eval", "0,1,2,2,0", "--method", method, "--crosscheck")
        env = envelope(out)
        assert rc == 0
        assert env["result"]["method"] == method
        assert env["result"]["crosscheck"] == "pass"


def test_eval_formula_unavailable(capsys):
    rc, out, err = run(capsys, "eval", "1,0,2,0,2", "--method", "formula")
    assert rc == 2 and out == ""
    assert err.startswith("error:")


def test_eval_parse_failures(capsys):
    for bad in (["eval", "1,2"], ["eval", ""], ["eval", "1,a"], ["eval", "2,0", "--q", "0.5"]):
        rc, out, err = run(capsys, *bad)
        assert rc == 2 and err.startswith("error:")


def test_eval_crosscheck_mismatch_exit_code(capsys, monkeypatch):
    # inject a wrong oracle to drive the mismatch path
    monkeypatch.setattr(cli, "remixed_induction", lambda c: QPoly((99,)))
    rc, out, _ = run(capsys, "eval", "1,1", "--method", "exact", "--crosscheck")
    env = envelope(out)
    assert rc == 3
    assert env["result"]["crosscheck"] == "fail"
    assert env["result"]["oracle"] == {"coeffs": ["99"]}


def test_classify_envelope(capsys):
    rc, out, _ = run(capsys, "classify", "0,3,0,2,0")
    env = envelope(out)
    assert rc == 0
    flags = env["result"]["flags"]
    assert flags == {
        "lukasiewicz": False,
        "almost_defect": 1,
        "connected": False,
        "one_hole": True,
        "weakly_lukasiewicz": True,
    }


def test_table_csv_exact_bytes(capsys):
    rc, out, err = run(capsys, "table", "connected", "--gamma", "2", "--n", "2", "--format", "csv")
    assert rc == 0 and err == ""
    assert out == "index,coeff0,coeff1\n0,1,0\n1,0,1\n"


def test_table_json_cs(capsys):
    rc, out, _ = run(capsys, "table", "cs", "--x", "1", "--y", "1", "--rsmax", "2")
    env = envelope(out)
    assert rc == 0
    rows = env["result"]["rows"]
    assert [r["index"] for r in rows] == ["0:0", "0:1", "1:0", "0:2", "1:1", "2:0"]
    by_index = {r["index"]: r["poly"]["coeffs"] for r in rows}
    assert by_index["1:1"] == ["0", "2", "2"]
    assert by_index["0:0"] == ["1"]


def test_table_hit(capsys):
    rc, out, _ = run(capsys, "table", "hit", "--lambda", "2,1", "--n", "3")
    env = envelope(out)
    assert rc == 0
    rows = env["result"]["rows"]
    assert len(rows) == 4
    for row in rows:
        want = q_hit(HitIndex((2, 1), int(row["index"]), 3))
        assert row["poly"] == want.to_json()
    rc, _, err = run(capsys, "table", "hit", "--lambda", "9", "--n", "3")
    assert rc == 2 and err.startswith("error:")


def test_table_missing_option(capsys):
    rc, _, err = run(capsys, "table", "connected", "--n", "5")
    assert rc == 2 and "gamma" in err


def test_table_one_hole(capsys):
    rc, out, _ = run(capsys, "table", "one-hole", "--gamma", "2,0,2", "--n", "4")
    env = envelope(out)
    assert rc == 0
    rows = env["result"]["rows"]
    assert [r["index"] for r in rows] == ["0", "1"]
    assert rows[0]["poly"]["coeffs"] == ["1", "2", "3", "2", "1"]
    # core does not carry enough balls for the requested total
    rc, _, err = run(capsys, "table", "one-hole", "--gamma", "2,0,1", "--n", "4")
    assert rc == 2 and err.startswith("error:")


def test_invocations_byte_identical(capsys):
    _, first, _ = run(capsys, "eval", "0,2,1,0,3,0", "--crosscheck", "--pretty")
    _, second, _ = run(capsys, "eval", "0,2,1,0,3,0", "--crosscheck", "--pretty")
    assert first == second


def test_verify_all_small(capsys):
    rc, out, _ = run(capsys, "verify", "all", "--nmax", "3")
    env = envelope(out)
    assert rc == 0
    suites = env["result"]["suites"]
    assert [s["name"] for s in suites] == ["families", "congruence", "corrective", "abelian"]
    for s in suites:
        assert s["passed"] is True and s["failures"] == []
    fam = suites[0]["checks"]
    assert fam["induction"] == 1 + 3 + 10
    assert fam["dispatch"] == fam["induction"]


def test_verify_single_suite(capsys):
    rc, out, _ = run(capsys, "verify", "congruence", "--nmax", "4")
    env = envelope(out)
    assert rc == 0
    assert [s["name"] for s in env["result"]["suites"]] == ["congruence"]


def test_verify_bad_nmax(capsys):
    rc, _, err = run(capsys, "verify", "all", "--nmax", "0")
    assert rc == 2 and err.startswith("error:")


def test_verify_failure_exit_code(capsys, monkeypatch):
    fake = {"name": "families", "passed": False, "checks": {}, "failures": [{"config": [9]}]}
    monkeypatch.setitem(cli._SUITES, "families", lambda nmax, tables=None: fake)
    rc, out, _ = run(capsys, "verify", "families", "--nmax", "1")
    assert rc == 4
    env = envelope(out)
    assert env["result"]["suites"][0]["passed"] is False


def test_unknown_subcommand_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["tabulate"])
    assert exc.value.code == 2


def test_simulate_envelope(capsys):
    rc, out, _ = run(capsys, "simulate", "1,1,1", "--trials", "50", "--seed", "3")
    env = envelope(out)
    assert rc == 0
    sim = env["result"]["sim"]
    assert sim["trials"] == 50 and sim["successes"] == 50
    assert env["result"]["exact"] == "1"
    assert env["result"]["sigma_deviation"] == "0.0000"


def test_simulate_deterministic(capsys):
    _, first, _ = run(capsys, "simulate", "0,3,0", "--q", "1/2", "--trials", "200", "--seed", "5")
    _, second, _ = run(capsys, "simulate", "0,3,0", "--q", "1/2", "--trials", "200", "--seed", "5")
    assert first == second


def test_simulate_argument_validation(capsys):
    rc, _, err = run(capsys, "simulate", "2,0", "--trials", "0")
    assert rc == 2 and err.startswith("error:")
    rc, _, err = run(capsys, "simulate", "2,1")
    assert rc == 2 and err.startswith("error:")
    rc, _, err = run(capsys, "simulate", "2,0", "--q", "-1")
    assert rc == 2 and err.startswith("error:")


def test_in_process_drivers_share_tables(oracle):
    tables = oracle.tables(4)
    for driver in (cli.verify_families, cli.verify_congruence, cli.verify_corrective):
        report = driver(4, tables)
        assert report["passed"], report["failures"]
    report = cli.verify_abelian(4, tables)
    assert report["passed"]
