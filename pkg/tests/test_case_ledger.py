import json

import pytest

from genus4.case_ledger import (
    CaseRecord,
    WitnessRecord,
    bounds_report,
    emit_report,
    load_ledger,
    parse_equation,
    parse_ledger,
    parse_polynomial,
    run_all,
    run_case,
    verify_table,
    verify_witness,
)


@pytest.fixture(scope="module")
def ledger():
    return load_ledger()


def test_transcription_counts(ledger):
    assert len(ledger.cases) == 32
    assert len(ledger.lower_table) == 21
    assert len({(c.q, c.N) for c in ledger.cases}) == 32
    assert len({(w.q, w.N) for w in ledger.lower_table}) == 21
    assert all(c.q < 100 for c in ledger.cases)
    assert {w.q for w in ledger.lower_table} <= {r.q for r in ledger.ranges}


def test_round_trip(ledger):
    again = parse_ledger(json.loads(json.dumps(ledger.to_dict())))
    assert again.to_dict() == ledger.to_dict()


def test_every_range_is_consistent(ledger):
    for r in ledger.ranges:
        lo, hi = r.new
        assert lo <= hi
        assert r.old[0] is None or r.old[0] <= lo
        assert hi <= r.old[1]


def test_bad_records_are_rejected(ledger):
    with pytest.raises(ValueError):
        CaseRecord(13, 39, {"kind": "guesswork"})
    with pytest.raises(ValueError):
        parse_ledger({"version": 99, "records": []})
    with pytest.raises(KeyError):
        ledger.case(13, 40)


def test_equation_parsing():
    assert parse_polynomial("x^3 + x^2 - 4x - 3") == {(3, 0): 1, (2, 0): 1, (1, 0): -4, (0, 0): -3}
    var, m, terms = parse_equation("z^5 = y + 2x^2y - 1")
    assert (var, m) == ("z", 5) and terms[(0, 1)] == 1 and terms[(2, 1)] == 2


def test_single_witness(ledger):
    chk = verify_witness(ledger.lower_table[0])
    assert chk.ok and chk.count == chk.N and chk.genus == 4


def test_corrupted_row_is_caught(ledger):
    good = next(w for w in ledger.lower_table if w.q == 13)
    bad = WitnessRecord(13, 39, good.base, good.cover)
    chk = verify_witness(bad)
    assert not chk.ok and chk.count == 38


def test_empty_report_is_not_run(ledger):
    rep = bounds_report(ledger)
    needs_work = {c.q for c in ledger.cases if c.kind != "none_exist"} | {w.q for w in ledger.lower_table}
    for row in rep.rows:
        if row.q in needs_work:
            assert row.status == "not run"
        else:
            assert row.status == "matches"


def test_rows_after_runs(ledger):
    wits = verify_table(ledger.witnesses).checks
    outcomes = [run_case(ledger.case(13, 39)), run_case(ledger.case(19, 52)), run_case(ledger.case(19, 51))]
    assert [o.status for o in outcomes] == ["eliminated", "eliminated", "external"]
    rows = {r.q: r for r in bounds_report(ledger, outcomes, wits).rows}
    assert rows[13].display == "38" and rows[13].status == "matches"
    assert rows[19].display == "48-50" and rows[19].status == "matches"


def test_full_budget_rows_are_gated(ledger):
    out = run_case(ledger.case(83, 154))
    assert out.status == "budget-exceeded"
    rows = {r.q: r for r in bounds_report(ledger, [out]).rows}
    assert rows[83].status == "pending"


def test_report_formats(ledger):
    rep = bounds_report(ledger)
    assert emit_report(rep, "json") == rep.to_json()
    assert emit_report(rep, "text").splitlines()[0].split()[:2] == ["q", "computed"]
    with pytest.raises(ValueError):
        emit_report(rep, "xml")


def test_report_identical_across_worker_counts():
    ledger = load_ledger()
    small = parse_ledger({"version": 1, "records": [
        r for r in ledger.to_dict()["records"]
        if r["q"] in (13, 17) and (r["type"] != "case" or r["N"] in (39, 48, 47))]})
    one = emit_report(run_all(small, workers=1), "json")
    four = emit_report(run_all(small, workers=4), "json")
    assert one == four
    rows = {r["q"]: r for r in json.loads(one)["rows"]}
    assert rows[13]["range"] == "38"
