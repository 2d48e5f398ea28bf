import json

import pytest

from aont.reproduce import Check, _run, all_checks, scopes, verify_paper


def test_scopes_and_ids():
    ids = [c.check_id for c in all_checks()]
    assert len(ids) == len(set(ids))
    assert {"table2", "appendix", "exhaustive", "qp", "bounds", "cyclotomy", "sbibd"} <= set(scopes())
    assert all(c.paper_location for c in all_checks())


def test_table2_scope():
    rep = verify_paper("table2")
    assert [c.check_id for c in rep.checks] == [f"table2.s{s:02d}" for s in range(2, 9)]
    assert rep.ok and rep.counts() == {"pass": 7, "fail": 0, "skipped": 0}


def test_cyclotomy_scope():
    rep = verify_paper("cyclotomy", workers=2)
    assert len(rep.checks) == 7 and rep.ok
    assert rep.checks[-1].computed == [3, -7, 20, True, 4995836216]


def test_qp_scope():
    rep = verify_paper("qp")
    gamma4 = next(c for c in rep.checks if c.check_id == "qp.gamma4")
    assert gamma4.status == "pass" and gamma4.computed[0] == "15/8"


def test_long_checks_skip_without_flag():
    rep = verify_paper("exhaustive")
    status = {c.check_id: c.status for c in rep.checks}
    assert status["exhaustive.s07"] == status["exhaustive.s08"] == "skipped"
    assert all(status[f"exhaustive.s{s:02d}"] == "pass" for s in range(2, 7))
    assert rep.ok


@pytest.mark.parametrize("scope", ["appendix", "bounds", "sbibd", "cyclonumbers", "polyinverse",
                                   "cauchy", "doubling", "codec"])
def test_remaining_scopes_pass(scope):
    rep = verify_paper(scope)
    assert rep.checks and rep.ok, [c.to_json() for c in rep.checks if c.status == "fail"]


def test_failures_are_reported_not_raised():
    bad = _run(Check("x.fail", "nowhere", 1, lambda: 2), long=False)
    assert bad.status == "fail"
    boom = _run(Check("x.boom", "nowhere", 1, lambda: 1 // 0), long=False)
    assert boom.status == "fail" and "ZeroDivisionError" in boom.note


def test_unknown_scope():
    with pytest.raises(ValueError):
        verify_paper("nonsense")


def test_report_json_roundtrips():
    rep = verify_paper("doubling")
    blob = json.loads(json.dumps(rep.to_json()))
    assert blob["checks"][0]["check_id"] == "doubling.n2"
