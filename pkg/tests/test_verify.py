from __future__ import annotations

import json

import pytest

from greenadams import adams, verify
from greenadams.greenring import GreenContext


@pytest.fixture(scope="module")
def report_q4():
    return verify.run(GreenContext(2, 2), "all")


def test_report_structure(report_q4):
    doc = json.loads(report_q4.to_json())
    assert list(doc) == ["context", "suite", "seed", "checks", "summary", "observations", "wall_time_ms"]
    assert doc["context"] == {"p": 2, "q": 4, "dim_cap": 60000}
    assert doc["suite"] == "all"
    assert doc["wall_time_ms"] is None
    for c in doc["checks"]:
        assert c["status"] in ("pass", "fail", "skipped_cap")
        assert set(c) >= {"check_id", "statement", "status", "cases", "skipped", "witness"}
        assert "time_ms" not in c
    ids = [c["check_id"] for c in doc["checks"]]
    assert len(ids) == len(set(ids))
    summ = doc["summary"]
    assert sum(summ.values()) == len(ids)
    assert summ["fail"] == 0 and report_q4.ok


def test_every_suite_contributes(report_q4):
    prefixes = {c.check_id.split(".")[0].split("[")[0] for c in report_q4.checks}
    assert prefixes == set(verify.SUITES)


def test_minimal_periods(ctx_factory):
    for (p, e), (lam, s) in {(2, 1): (4, 2), (2, 2): (8, 4), (3, 1): (6, 6), (5, 1): (10, 10)}.items():
        ctx = ctx_factory(p, e)
        assert verify.minimal_period(ctx, "lambda") == lam
        assert verify.minimal_period(ctx, "s") == s
    with pytest.raises(ValueError):
        verify.minimal_period(ctx_factory(2, 2), "t")
    with pytest.raises(ValueError):
        verify.minimal_period(GreenContext(2, 0), "lambda")


def test_minimal_period_values_in_report(report_q4):
    assert report_q4.check("periodicity.minimal_period_lambda").value == 8
    assert report_q4.check("periodicity.minimal_period_s").value == 4
    with pytest.raises(KeyError):
        report_q4.check("no.such.check")


def test_determinism():
    a = verify.run(GreenContext(3, 1), "ring,adams,periodicity,heller,conversion", seed=7).to_json()
    b = verify.run(GreenContext(3, 1), "ring,adams,periodicity,heller,conversion", seed=7).to_json()
    assert a == b


def test_timings_opt_in():
    rep = verify.run(GreenContext(2, 1), "periodicity", timings=True)
    doc = rep.to_dict()
    assert isinstance(doc["wall_time_ms"], float)
    assert all("time_ms" in c for c in doc["checks"])


def test_parse_suites():
    assert verify.parse_suites("all") == list(verify.SUITES)
    assert verify.parse_suites("heller, ring") == ["ring", "heller"]
    with pytest.raises(ValueError, match="unknown suite"):
        verify.parse_suites("ring,bogus")


def test_n_max_must_cover_a_period():
    with pytest.raises(ValueError):
        verify.run(GreenContext(2, 2), "periodicity", n_max=7)
    rep = verify.run(GreenContext(2, 2), "periodicity", n_max=8)
    assert rep.ok


def test_skipped_cap_is_not_a_pass():
    rep = verify.run(GreenContext(2, 3, dim_cap=200), "conversion")
    skipped = [c for c in rep.checks if c.status == "skipped_cap"]
    assert skipped
    for c in skipped:
        assert c.skipped and c.note and "cap" in c.note
    assert rep.summary["skipped_cap"] == len(skipped)


def test_skips_shrink_as_cap_grows():
    counts = [verify.run(GreenContext(2, 3, dim_cap=cap), "conversion,heller").summary["skipped_cap"]
              for cap in (100, 1000, 10000)]
    assert counts[0] >= counts[1] >= counts[2]
    assert counts[0] > counts[2]


def test_failure_produces_witness(monkeypatch):
    real = adams.closed_form_adams_regular_lambda

    def broken(ctx, n):
        out = real(ctx, n)
        return out + ctx.one() if n == 3 else out

    monkeypatch.setattr(adams, "closed_form_adams_regular_lambda", broken)
    rep = verify.run(GreenContext(2, 2), "adams")
    assert not rep.ok
    bad = rep.failures()
    assert [c.check_id for c in bad] == ["adams.closed_form_lambda"]
    w = bad[0].witness
    assert w["n"] == 3 and w["r"] == 4
    assert w["actual"]["coeffs"] == [0, 0, 0, 1]
    assert w["expected"]["coeffs"] == [1, 0, 0, 1]
    assert w["expected"]["sum"] == "V1 + V4"
    assert rep.summary["fail"] == 1


def test_trivial_group_report():
    rep = verify.run(GreenContext(2, 0), "all")
    assert rep.ok
    assert rep.summary["skipped_cap"] == 0


def test_composition_observations_recorded(report_q4):
    assert report_q4.observations
    for o in report_q4.observations:
        assert o["kind"] == "composition_p_divides_n"
        assert o["n"] % 2 == 0
        assert sorted(o["m_holding"] + o["m_failing"]) == list(range(1, 9))
