import copy

import pytest

from cvgme import _published
from cvgme import reproduce as repro
from cvgme.errors import UnknownFixtureError

FAST = ["table5/", "table6/", "table7/", "table8/", "table9/", "table10/", "table11/", "appC/", "eq47/", "appA/"]
KNOWN_FAILURES = {"table10/gamma4a-ds"}


def test_manifest_ids_unique_and_grouped():
    ids = repro.case_ids()
    assert len(ids) == len(set(ids))
    groups = {i.split("/")[0] for i in ids}
    assert groups >= {"table2", "appC", "fig4", "sec5", "appA", "loss", "props", "neg"}
    assert all(repro.MANIFEST[i].budget > 0 for i in ids)


def test_select():
    assert repro.select("table2/6f") == ["table2/6f"]
    assert len(repro.select("table2/")) == 12
    assert repro.select(["appA/rmax", "appA/", "appA/rmax"])[0] == "appA/rmax"
    assert len(repro.select("appA/")) == 3
    assert repro.select("all") == repro.case_ids()
    for bad in ("table2", "nope/", "table2/7a"):
        with pytest.raises(UnknownFixtureError):
            repro.select(bad)


def test_fast_cases():
    results = repro.run_cases(FAST)
    failed = {r.id for r in results if r.failed}
    assert failed == KNOWN_FAILURES
    for r in results:
        assert r.seconds < r.budget, r.line()


def test_not_applicable_entries():
    for key in ("5a", "6a", "6b"):
        r = repro.run_case(f"table2/{key}")
        assert r.status == "n/a" and not r.failed


def test_tampered_digit_is_caught(monkeypatch):
    params = copy.deepcopy(_published.PARAMS)
    params["gamma1_product"]["ell_x"]["2,1"] = 0.660  # printed 0.760
    monkeypatch.setattr(_published, "PARAMS", params)
    failed = {r.id for r in repro.run_cases(FAST) if r.failed}
    assert failed == KNOWN_FAILURES | {"table5/gamma1-dp"}


def test_crashing_case_reports_error(monkeypatch):
    def boom():
        raise RuntimeError("broken fixture")

    case = repro.MANIFEST["appA/rmax"]
    monkeypatch.setitem(repro.MANIFEST, "appA/rmax", repro.Case(case.id, case.expected, case.budget, boom))
    r = repro.run_case("appA/rmax")
    assert r.status == "error" and r.failed and "broken fixture" in r.measured
    assert r.line().startswith("ERROR")


def test_result_line_flags_overrun():
    r = repro.CaseResult("x/y", "pass", "1", "1", 3.0, 1.0)
    assert r.line().endswith("(over budget)]")


def test_4dp_score():
    assert repro.agrees_4dp([1.00004], [1.0]) == pytest.approx(0.8)
    assert repro.agrees_4dp([20.002], [20.0]) == pytest.approx(2.0)
