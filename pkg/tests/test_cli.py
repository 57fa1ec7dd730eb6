import io
import json
import subprocess
import sys

import pytest

from hgtrace.cli import RunConfig, UsageError, parse_primes, run


def _run(argv):
    out = io.StringIO()
    code = run(argv, out)
    return code, out.getvalue()


def test_trace_example():
    code, text = _run(["trace", "--group", "2,3,inf", "--weight", "12", "--p", "5"])
    assert code == 0
    assert json.loads(text)["trace"] == 4830


def test_verify_example():
    code, text = _run(["verify", "--suite", "k2-sums", "--pmax", "50"])
    assert code == 0
    report = json.loads(text)
    assert report["passed"] and report["checks"] > 0 and report["failures"] == []


def test_eigen_example():
    code, text = _run(["eigen", "--group", "2,4,6", "--weight", "24", "--p", "5"])
    assert code == 0
    eig = json.loads(text)["eigenvalues"]
    assert {(e["a"], e["b"], e["D"]) for e in eig} == {(12624078, 5184, 1296640489), (12624078, -5184, 1296640489)}


def test_hsum_matches_point_count():
    code, text = _run(["hsum", "--alpha", "1/2,1/2", "--beta", "1,1", "--lambda", "2", "--p", "7"])
    assert code == 0
    row = json.loads(text)
    _, n = _run(["ec-count", "--family", "gamma1_4", "--t", "2", "--p", "7"])
    assert json.loads(n)["count"] == 7 + 1 - row["H"]


def test_hsum_datum_forms_agree():
    a = _run(["hsum", "--datum", "1/3,2/3;1,1", "--lambda", "5", "--p", "13"])
    b = _run(["hsum", "--datum", "1/3,2/3/1,1", "--lambda", "5", "--p", "13"])
    c = _run(["hsum", "--alpha", "1/3,2/3", "--beta", "1,1", "--lambda", "5", "--p", "13"])
    assert a == b == c


def test_hsum_guard_primes():
    _, one = _run(["hsum", "--datum", "1/2,1/2;1,1", "--lambda", "3", "--p", "13"])
    _, three = _run(["hsum", "--datum", "1/2,1/2;1,1", "--lambda", "3", "--p", "13", "--guard-primes", "3"])
    one, three = json.loads(one), json.loads(three)
    assert one["H"] == three["H"]
    assert three["aux_primes"] == one["aux_primes"] + 2


def test_repeated_runs_byte_identical():
    argv = ["trace", "--group", "2,4,6", "--weight", "8", "--p", "5..30"]
    assert _run(argv) == _run(argv)
    verify = ["verify", "--suite", "clausen", "--pmax", "30"]
    assert _run(verify) == _run(verify)


def test_json_keys_sorted():
    _, text = _run(["trace", "--group", "2,3,inf", "--weight", "12", "--p", "7"])
    obj = json.loads(text)
    assert text == json.dumps(obj, sort_keys=True, indent=2) + "\n"


def test_csv_output_and_bad_prime_notice(capsys):
    code, text = _run(["trace", "--group", "2,3,inf", "--weight", "12", "--p", "2..13", "--format", "csv"])
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "group,weight,p,trace"
    assert [line.split(",")[-2] for line in lines[1:]] == ["5", "7", "11", "13"]
    assert lines[1].endswith(",12,5,4830")
    err = capsys.readouterr().err
    assert "skipping p = 2" in err and "skipping p = 3" in err


def test_parallel_matches_serial():
    argv = ["trace", "--group", "2,4,4", "--weight", "6", "--p", "5..60"]
    assert _run(argv) == _run(argv + ["--jobs", "3"])


def test_computation_error_exit_one(capsys):
    code, text = _run(["ec-count", "--family", "gamma1_4", "--t", "0", "--p", "7"])
    assert code == 1 and text == ""
    assert "SingularCurve" in capsys.readouterr().err


def test_unknown_group_exit_one():
    assert _run(["trace", "--group", "5,5,5", "--weight", "4", "--p", "7"])[0] == 1


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["trace", "--group", "2,3,inf"],
        ["trace", "--group", "2,3,inf", "--weight", "12", "--p", "13..5"],
        ["trace", "--group", "2,3,inf", "--weight", "12", "--p", "x"],
        ["trace", "--group", "2,3,inf", "--weight", "12", "--p", "5", "--jobs", "0"],
        ["hsum", "--alpha", "1/2,1/2", "--p", "7"],
        ["verify", "--suite", "k2-sums", "--format", "xml"],
        ["fixtures", "fetch"],
    ],
)
def test_usage_error_exit_two(argv):
    assert _run(argv)[0] == 2


def test_fetch_without_network_exit_one(monkeypatch, capsys):
    monkeypatch.delenv("HGTRACE_NETWORK", raising=False)
    assert _run(["fixtures", "fetch", "--label", "6.8.a.a"])[0] == 1
    assert "FixtureUnavailable" in capsys.readouterr().err


def test_fixtures_show():
    code, text = _run(["fixtures", "show", "--label", "6.4.a.a"])
    assert code == 0
    assert json.loads(text)["ap"]["5"] == 6


def test_verify_all_skips_missing_fixture(monkeypatch):
    from hgtrace.oracles import suites

    def missing(label, p):
        from hgtrace.errors import FixtureUnavailable

        raise FixtureUnavailable(label)

    monkeypatch.setattr(suites, "_default_ap_source", missing)
    code, text = _run(["verify", "--suite", "all", "--pmax", "13"])
    assert code == 0
    reports = {r["suite"]: r for r in json.loads(text)}
    assert reports["wt4-2223"]["skipped"]
    assert all(r["passed"] for name, r in reports.items() if name != "wt4-2223")


def test_parse_primes():
    assert parse_primes("5..20") == [5, 7, 11, 13, 17, 19]
    assert parse_primes("13") == [13]
    with pytest.raises(UsageError):
        parse_primes("12")


def test_run_config_validation():
    with pytest.raises(UsageError):
        RunConfig("trace", output="yaml").validate()
    with pytest.raises(UsageError):
        RunConfig("trace").validate()
    RunConfig("verify").validate()


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hgtrace.cli", "trace", "--group", "2,3,inf", "--weight", "12", "--p", "5"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["trace"] == 4830
