import json
import re

import pytest

from qcong import cli


@pytest.fixture(autouse=True)
def _serial(monkeypatch):
    monkeypatch.setenv("QCONG_THREADS", "1")


def run(capsys, *argv):
    code = cli.run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def validate(doc):
    assert set(doc) == {"version", "seed", "results"}
    assert doc["version"] == 1
    for r in doc["results"]:
        assert set(r) == {"id", "instance", "modulus", "verdict", "detail", "time_ms"}
        assert set(r["instance"]) == {"n", "p", "params"}
        assert r["verdict"] in ("pass", "fail", "skipped")
        for d in r["detail"]:
            assert set(d) == {"factor", "required", "achieved"}


def test_parse_range():
    assert cli.parse_range("3..7") == [3, 4, 5, 6, 7]
    assert cli.parse_range("5,7,11") == [5, 7, 11]
    with pytest.raises(cli.UsageError):
        cli.parse_range("7..3")


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    assert "S-FIRST-HALF" in out and "C-QHAMME-A" in out and "I-WATSON" in out and "P-H2" in out
    code, out, _ = run(capsys, "list", "--format", "json")
    ids = [e["id"] for e in json.loads(out)["entries"]]
    assert len(ids) == len(set(ids))


def test_check_exit_zero(capsys):
    code, out, _ = run(capsys, "check", "S-FIRST-HALF", "--n", "3..15")
    assert code == 0
    assert out.strip().splitlines()[-1] == "pass=7 fail=0 skipped=6"


def test_usage_errors(capsys):
    assert run(capsys, "check", "NO-SUCH-ID", "--n", "3")[0] == 2
    assert run(capsys, "check", "S-FIRST-HALF")[0] == 2
    assert run(capsys, "check", "S-FIRST-HALF", "--n", "x..y")[0] == 2
    assert run(capsys, "padic", "P-H2", "--p", "9")[0] == 2
    assert run(capsys, "bogus")[0] == 2


def test_fail_exit_one_and_counterexample_marker(capsys):
    code, out, _ = run(capsys, "check", "C-2D-MINUS", "--n", "5", "--family", "3")
    assert code == 1
    assert "POTENTIAL COUNTEREXAMPLE: C-2D-MINUS" in out


def test_skipped_never_fails(capsys):
    code, out, _ = run(capsys, "padic", "P-LONG", "--p", "3")
    assert code == 0
    assert "SKIPPED" in out


def test_json_schema_and_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        code, _, _ = run(capsys, "check", "S-QAB", "--n", "3..5", "--format", "json", "--out", str(path))
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    validate(doc)
    assert [r["instance"]["n"] for r in doc["results"]] == [3, 4, 5]
    assert all(r["time_ms"] == 0 for r in doc["results"])


def test_parallel_matches_serial(capsys, monkeypatch):
    args = ("check", "S-FOURTH", "--n", "2..8", "--format", "json")
    _, serial, _ = run(capsys, *args)
    monkeypatch.setenv("QCONG_THREADS", "3")
    _, par, _ = run(capsys, *args)
    assert serial == par


def test_footer_matches_tally(capsys):
    code, out, _ = run(capsys, "check", "S-THIRD", "--n", "1..8")
    rows = [ln for ln in out.splitlines()[1:] if ln.startswith("S-THIRD")]
    m = re.search(r"pass=(\d+) fail=(\d+) skipped=(\d+)", out)
    counts = [int(x) for x in m.groups()]
    assert counts[0] == sum(bool(re.search(r"\sPASS(\s|$)", r)) for r in rows)
    assert counts[2] == sum(bool(re.search(r"\sSKIPPED(\s|$)", r)) for r in rows)
    assert sum(counts) == len(rows) == 8


def test_padic_and_identity_commands(capsys):
    code, out, _ = run(capsys, "padic", "P-H2", "--p", "5,7", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    validate(doc)
    assert [r["instance"]["p"] for r in doc["results"]] == [5, 7]
    code, out, _ = run(capsys, "identity", "I-WATSON", "--n", "2", "--format", "json")
    assert code == 0
    validate(json.loads(out))


def test_scan_padic_drops_inadmissible_primes(capsys):
    code, out, _ = run(capsys, "scan", "P-75", "--p", "3..13", "--format", "json")
    assert code == 0
    ps = [r["instance"]["p"] for r in json.loads(out)["results"]]
    assert ps and all(p in (3, 5, 7, 11, 13) for p in ps)
