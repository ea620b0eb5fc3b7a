"""Registry behavior: verdicts, hypothesis handling, soundness gate."""

from __future__ import annotations

import pytest

from tensorcoh.kernel import AmbientRing, UnsupportedInput
from tensorcoh.modules import GradedMap, GradedModule, Ideal, QuotientRing
from tensorcoh import checks

S2 = QuotientRing(AmbientRing(["x", "y"]))
S3 = QuotientRing(AmbientRing(["x", "y", "z"]))


def _m(ring):
    return ring.irrelevant_ideal().module()


def test_unknown_check_id():
    with pytest.raises(UnsupportedInput):
        checks.run_check("no-such-check", _m(S2))


def test_hypotheses_violated_verdict():
    # lemma-0 needs finite length
    rep = checks.evaluate_bound("lemma-0", _m(S2), _m(S2))
    assert rep.verdict == "hypotheses-violated"
    assert ("length(M) finite", "violated") in rep.hypotheses


def test_certificate_missing_vs_supplied():
    rep = checks.evaluate_bound("prop-buchs", S2.one_module(), _m(S2))
    assert rep.verdict == "hypotheses-violated"  # no Buchsbaum certificate
    # a certificate is recorded as certified, not verified
    C = GradedModule(GradedMap.from_entries(S2, [[S2.poly("x")]]))
    rep = checks.evaluate_bound("prop-buchs", C, _m(S2),
                                certificates={"buchsbaum": True})
    assert ("N Buchsbaum", "certified") in rep.hypotheses
    assert rep.verdict == "holds"


def test_soundness_gate():
    rep = checks.CheckReport("f-m2", [], 2, 1, "fails", 0)
    with pytest.raises(checks.SoundnessError):
        checks.assert_sound(rep, "unit test")
    ok = checks.CheckReport("yoshida_report", [], 2, 1, "fails", 0)
    assert checks.assert_sound(ok) is ok  # not in the proven set


def test_vanishing_general_ideal_grade_decision():
    # H^r_a decided through grade: grade > r means the whole range vanishes
    I = Ideal(S3, [S3.poly("x"), S3.poly("y")])
    Z = GradedModule(GradedMap.from_entries(
        S3, [[S3.poly("x")], [S3.poly("y")], [S3.poly("z")]],
        target_twists=[2, 2, 2], source_twists=[3]))
    rep = checks.verify_vanishing("g-vanish", Z, Z, a=I, r=0)
    assert rep.verdict in ("holds", "hypotheses-violated")
    if rep.verdict == "holds":
        assert rep.lhs["grade"] >= 1


def test_free_518_undecidable_branch():
    # grade(a, power) < r leaves the single index r undecided
    I = Ideal(S2, [S2.poly("x")])
    M = _m(S2)
    rep = checks.freeness_criterion("free-518", M, a=I, r=1,
                                    certificates={"locally_free": True})
    assert rep.verdict in ("undecidable", "hypotheses-violated", "holds")


def test_depth_sequence_values_bounded_by_dim():
    seq, rep = checks.depth_sequence(_m(S2), nmax=3)
    assert all(0 <= v <= 2 for v in seq.values)
    assert seq.values == [1, 0, 0]
    assert seq.stabilization == 2
    assert rep.verdict == "holds"


def test_depth_sequence_truncation_cap():
    I = Ideal(S2, [S2.poly("x"), S2.poly("y")])
    seq, _rep = checks.depth_sequence(I.module(), nmax=8, size_cap=16)
    assert seq.truncated


def test_registry_table_covers_all_ids():
    rows = checks.registry_table()
    ids = {r["id"] for r in rows}
    assert ids == set(checks.ALL_CHECK_IDS)
    assert all(r["statement"] for r in rows)


def test_report_json_shape():
    rep = checks.verify_formula("f-m2", S2)
    js = rep.as_json()
    assert set(js) >= {"check", "hypotheses", "lhs", "rhs", "verdict", "millis"}
    assert js["verdict"] == "holds"
    assert all(set(h) == {"name", "status"} for h in js["hypotheses"])
