import json
import re
from fractions import Fraction as Fr

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from realcubic.families import F_, FamilyId, RAW_FAMILIES
from realcubic.verdict import (
    AnalysisInput, AuditError, ConstraintError, Status, Verdict, analyze, analyze_family,
    check_invariants, eight_a1_classify, parse_permutation,
)
from sampling import CATALOG_FAMILIES, draws

FORBIDDEN = re.compile(r"paper|lemma|prop\.|proposition|theorem|§|section|eq\.|\[[A-Z]", re.I)


def _counts(v):
    return [t for t in v.trace if t.rule == "fibre arc count"]


def test_two_d4_minus_partition():
    seen = set()
    for p in draws(F_.TwoD4MinusQ, 500, seed=31):
        v = analyze_family(F_.TwoD4MinusQ, p)
        check_invariants(v)
        seen.add(v.status)
        assert v.status in (Status.Rational, Status.NotStablyRational, Status.Open)
        if v.status is Status.NotStablyRational:
            assert v.components == 2
            assert _counts(v)[0].outcome.startswith("2 component")
        if v.status is Status.Open:
            assert v.components == 1
    assert Status.Rational in seen and Status.Open in seen


@pytest.mark.parametrize("family", CATALOG_FAMILIES, ids=lambda f: f.value)
def test_every_catalog_family_gets_a_verdict(family):
    for p in draws(family, 2, seed=32):
        v = analyze_family(family, p, oracle_resolution=128)
        assert isinstance(v, Verdict)
        check_invariants(v)
        assert v.trace
        for t in v.trace:
            assert not FORBIDDEN.search(t.citation), t.citation
            assert not FORBIDDEN.search(t.rule), t.rule


RAW_CUBIC = "x1^3 + x2^3 + x3^3 + x4^3 + x5^3 + x1*x2*x3"


@pytest.mark.parametrize("family", sorted(RAW_FAMILIES, key=lambda f: f.value), ids=lambda f: f.value)
def test_raw_families(family):
    v = analyze(AnalysisInput(family, cubic=RAW_CUBIC))
    check_invariants(v)
    assert v.status in (Status.Rational, Status.Open)


def test_witness_makes_rational():
    cubic = "x1*x2*x3 + x4*x5*(x1 + x2 + x3)"
    inp = AnalysisInput(F_.TwoA3Plane, cubic=cubic, witnesses={"line": "x2, x3, x5", "plane": "x1, x4"},
                        search_real_singular=False)
    v = analyze(inp)
    assert v.status is Status.Rational
    assert any(t.outcome == "contained=True, disjoint=True" for t in v.trace)
    bad = AnalysisInput(F_.TwoA3Plane, cubic=cubic, witnesses={"line": "x1, x2, x3", "plane": "x1, x4"},
                        search_real_singular=False)
    assert analyze(bad).status is Status.Open


def test_real_singular_point_decides_first():
    cubic = "x5*(x1^2 + x2^2 - x3^2 - x4^2) + x1^3 + x2^3 + x3^3 + x4^3"
    v = analyze(AnalysisInput(F_.FourA1Plane, cubic=cubic))
    assert v.status is Status.Rational
    assert v.trace[-1].rule == "real singular point"


def test_input_validation():
    with pytest.raises(ValueError):
        AnalysisInput(F_.TwoA5, {"b": 0}, witnesses={"scroll": []})
    with pytest.raises(ValueError):
        AnalysisInput(F_.TwoA5, {"b": 0}, cubic=RAW_CUBIC)
    with pytest.raises(ValueError):
        AnalysisInput(F_.TwoA3Plane, {"b": 0}, cubic=RAW_CUBIC)
    with pytest.raises(ValueError):
        analyze(AnalysisInput(F_.TwoA3Plane))
    with pytest.raises(ValueError):
        AnalysisInput("NoSuchFamily")


def test_constraint_error():
    with pytest.raises(ConstraintError) as err:
        analyze_family(F_.TwoD4TwoA1, {"a": 1, "b3": 0, "b4": 2})
    assert err.value.violations[0].constraint == "b4^2 != 4*a"


def test_declared_data_is_audited():
    p = {"a1": 1, "a2": 1, "a3": 1, "variant": 1}
    ok = analyze_family(F_.EightA1, p, declared={"eight_a1_iota": [[1, 2], [3, 4], [5, 6], [7, 8]]})
    assert ok.status is Status.Rational
    with pytest.raises(AuditError):
        analyze_family(F_.EightA1, p, declared={"eight_a1_iota": [[1, 2], [3, 4], [5, 8], [6, 7]]})
    q = draws(F_.TwoA3TwoA1ThreePlanes, 1)[0]
    with pytest.raises(AuditError):
        analyze_family(F_.TwoA3TwoA1ThreePlanes, q, declared={"defect": 1})
    with pytest.raises(AuditError):
        analyze(AnalysisInput(F_.SixA1NoPlane, cubic="x1*(x1*x2 - x3^2) + x2*(x2*x4 - x5^2) + x3*(x1*x5 + x3*x4)",
                              witnesses={"scroll": ["x1*x2 - x3^2", "x2*x4 - x5^2", "x1*x5 + x3*x4"]},
                              declared={"galois_swaps_scrolls": True}, search_real_singular=False))


def test_scroll_and_galois_declarations():
    cubic = "x1*(x1*x2 - x3^2) + x2*(x2*x4 - x5^2) + x3*(x1*x5 + x3*x4)"
    scroll = ["x1*x2 - x3^2", "x2*x4 - x5^2", "x1*x5 + x3*x4"]
    v = analyze(AnalysisInput(F_.SixA1NoPlane, cubic=cubic, witnesses={"scroll": scroll},
                              search_real_singular=False))
    assert v.status is Status.Rational
    v = analyze(AnalysisInput(F_.SixA1NoPlane, cubic=cubic, declared={"galois_swaps_scrolls": True},
                              search_real_singular=False))
    assert v.status is Status.NotStablyRational
    assert any(t.outcome == "H1 = Z/2" for t in v.trace)


@pytest.mark.parametrize("perm,case,fixed", [
    ({1: 2, 2: 1, 3: 4, 4: 3, 5: 6, 6: 5, 7: 8, 8: 7}, 1, [3, 4, 5]),
    ({1: 2, 2: 1, 3: 4, 4: 3, 5: 7, 7: 5, 6: 8, 8: 6}, 2, [1, 2, 3]),
    ({1: 2, 2: 1, 3: 4, 4: 3, 5: 8, 8: 5, 6: 7, 7: 6}, 3, [3]),
])
def test_eight_a1_classify(perm, case, fixed):
    info = eight_a1_classify(perm)
    assert info["case"] == case
    assert info["fixed_planes"] == fixed
    assert info["fixed_plane_count"] == len(fixed)
    as_list = [perm[k] - 1 for k in range(1, 9)]
    assert eight_a1_classify(as_list) == info


def test_eight_a1_classify_identity():
    info = eight_a1_classify(list(range(8)))
    assert info["fixed_plane_count"] == 5 and info["case"] is None
    with pytest.raises(ValueError):
        eight_a1_classify({1: 3, 3: 1})          # breaks the plane configuration


def test_parse_permutation_forms():
    cyc = parse_permutation([[1, 2], [3, 4]])
    assert cyc == parse_permutation({1: 2, 2: 1, 3: 4, 4: 3})
    assert cyc == parse_permutation([2, 1, 4, 3, 5, 6, 7, 8])
    assert cyc == parse_permutation("(12)(34)")
    assert parse_permutation("") == {k: k for k in range(1, 9)}
    with pytest.raises(ValueError):
        parse_permutation([1, 1, 2, 3, 4, 5, 6, 7])
    with pytest.raises(ValueError):
        parse_permutation("12 34")


def test_eight_a1_irrational_nodes():
    v = analyze_family(F_.EightA1, {"a1": 2, "a2": 1, "a3": 3, "variant": 3})
    assert v.status is Status.NotStablyRational
    assert "A1,A1" in v.trace[0].outcome


def test_verdict_is_deterministic_and_json():
    p = draws(F_.TwoA4, 1, seed=3)[0]
    a = analyze_family(F_.TwoA4, p, oracle_resolution=128).to_dict()
    b = analyze_family(F_.TwoA4, p, oracle_resolution=128).to_dict()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


@settings(max_examples=25, suppress_health_check=[HealthCheck.too_slow])
@given(st.sampled_from([F_.TwoD4MinusQ, F_.TwoD4PlusQ, F_.TwoA3TwoA1ThreePlanes, F_.SixA1OneRealPlane,
                        F_.SixA1ThreeRealPlanes, F_.TwoD4TwoA1, F_.EightA1, F_.TwoA5]),
       st.integers(0, 10 ** 6))
def test_invariants_property(family, seed):
    v = analyze_family(family, draws(family, 1, seed=seed)[0])
    check_invariants(v)
    if v.components is not None and v.components >= 2:
        assert v.status is Status.NotStablyRational
