import json
import os

import pytest

from ss5.cli import main


def _run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr().out
    return rc, out


def test_m8_writes_certificate_and_rechecks(tmp_path, capsys):
    out = str(tmp_path / "m8.json")
    rc, _ = _run(capsys, "m8", "--p", "7", "--mode", "unconditional", "--out", out)
    assert rc == 0
    doc = json.loads(open(out).read())
    assert doc["schema_version"] == "1"
    assert doc["kind"] == "m8"
    assert doc["payload"]["mode"] == "unconditional"
    rc, _ = _run(capsys, "recheck", out)
    assert rc == 0


def test_m8_identical_runs_are_byte_identical(tmp_path, capsys):
    a, b = str(tmp_path / "a.json"), str(tmp_path / "b.json")
    assert _run(capsys, "m8", "--p", "7", "--out", a)[0] == 0
    assert _run(capsys, "m8", "--p", "7", "--out", b)[0] == 0
    da, db = json.load(open(a)), json.load(open(b))
    da.pop("timings")
    db.pop("timings")
    assert json.dumps(da, sort_keys=True) == json.dumps(db, sort_keys=True)


def test_m8_precondition_exit_code(capsys):
    assert _run(capsys, "m8", "--p", "13")[0] == 2


def test_m8_budget_exit_code(tmp_path, capsys):
    # p=19 needs a degree-6 parameter field: any unconditional route blows
    # the default budget, but a conditional certificate is still written
    out = str(tmp_path / "m8_19.json")
    rc, _ = _run(capsys, "m8", "--p", "19", "--mode", "unconditional", "--out", out)
    assert rc == 3
    doc = json.loads(open(out).read())
    assert doc["payload"]["mode"] == "conditional"
    assert "budget_exceeded" in doc["payload"]["flags"]


def test_budget_floor_enforced(capsys):
    rc, _ = _run(capsys, "m8", "--p", "7", "--budget", "10")
    assert rc == 2


def test_budget_env_override(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("SS5_BUDGET", "50")
    rc, _ = _run(capsys, "m8", "--p", "7")
    assert rc == 2


def test_kummer_search_with_curve_file(tmp_path, capsys):
    csv = tmp_path / "curves.csv"
    csv.write_text(
        "p,label,d0,d1,d2,d3,d4,d5,d6\n"
        "5,zed,2,0,0,0,0,1,1\n"
        "13,skip,4,1,4,0,11,5,5\n"
    )
    out = str(tmp_path / "search.json")
    rc, _ = _run(capsys, "kummer", "search", "--p", "5", "--curves", str(csv),
                 "--out", out)
    assert rc == 0
    doc = json.loads(open(out).read())
    assert len(doc["payload"]["searches"]) == 1
    assert doc["payload"]["searches"][0]["supersingular_count"] == "6"
    rc, _ = _run(capsys, "recheck", out)
    assert rc == 0


def test_kummer_search_interrupted_then_resumed_equals_fresh(tmp_path, capsys):
    csv = tmp_path / "curves.csv"
    csv.write_text("5,zed,2,0,0,0,0,1,1\n")
    full = str(tmp_path / "full.json")
    rc, _ = _run(capsys, "kummer", "search", "--p", "5", "--curves", str(csv),
                 "--out", full)
    assert rc == 0
    ck = str(tmp_path / "ck.json")
    part = str(tmp_path / "part.json")
    rc, _ = _run(capsys, "kummer", "search", "--p", "5", "--curves", str(csv),
                 "--out", part, "--checkpoint", ck, "--limit", "2")
    assert rc == 0 and os.path.exists(ck)
    resumed = str(tmp_path / "resumed.json")
    rc, _ = _run(capsys, "kummer", "search", "--p", "5", "--curves", str(csv),
                 "--out", resumed, "--checkpoint", ck)
    assert rc == 0
    a = json.load(open(full))["payload"]["searches"][0]["results"]
    b = json.load(open(resumed))["payload"]["searches"][0]["results"]
    assert a == b


def test_kummer_search_bad_file(capsys):
    assert _run(capsys, "kummer", "search", "--p", "5", "--curves", "/no/file")[0] == 2


def test_verify_table1_row_and_bad_row(tmp_path, capsys):
    out = str(tmp_path / "row.json")
    rc, _ = _run(capsys, "kummer", "verify-table1", "--p", "5", "--out", out)
    assert rc == 0
    doc = json.loads(open(out).read())
    assert doc["payload"]["all_pass"]
    assert _run(capsys, "kummer", "verify-table1", "--p", "7")[0] == 2


def test_aux_commands(tmp_path, capsys):
    out = str(tmp_path / "g3.json")
    rc, _ = _run(capsys, "aux", "genus3", "--p", "7", "--out", out)
    assert rc == 0
    assert json.loads(open(out).read())["kind"] == "genus3"
    rc, text = _run(capsys, "aux", "np", "--p", "3")
    assert rc == 0 and json.loads(text)["N_p"] == "26/9"
    rc, text = _run(capsys, "aux", "dims", "--g", "3")
    assert rc == 0 and json.loads(text)["count"] == "2"
    assert _run(capsys, "aux", "genus3", "--p", "13")[0] == 2
    assert _run(capsys, "aux", "genus3", "--p", "3")[0] == 1


def test_poly_commands(capsys):
    rc, text = _run(capsys, "poly", "hasse", "--p", "7")
    assert rc == 0
    assert json.loads(text)["coeffs"] == ["1", "2", "2", "1"]
    rc, text = _run(capsys, "poly", "bigB", "--p", "7")
    doc = json.loads(text)
    assert rc == 0 and len(doc["coeffs"]) == 25  # degree (49-1)/2


def test_recheck_bad_file(capsys):
    assert _run(capsys, "recheck", "/no/such/file.json")[0] == 2
