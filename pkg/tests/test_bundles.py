from fractions import Fraction as Fr

import pytest
from hypothesis import given
from hypothesis import strategies as st

from realcubic.bundles import (
    BundleError, FiberType, bundle_for, classify_quadric_fiber, component_count_over_line,
    conic_bundle_model, count_circular_runs, decompose_base, fiber_type_from_signature,
    quadric_bundle_gram,
)
from realcubic.criteria import conic_locus_disconnected, criterion_components
from realcubic.exact.multipoly import cubic_ring
from realcubic.exact.upoly import is_squarefree
from realcubic.families import F_, LinearSubspace, build_cubic, conic_delta_derived, discriminant_polynomial
from realcubic.oracle import fiber_scan_p1
from sampling import draws

x1, x2, x3, x4, x5 = cubic_ring()

QUADRIC_FAMILIES = [F_.TwoD4MinusQ, F_.TwoD4PlusQ, F_.TwoA3TwoA1ThreePlanes, F_.SixA1ThreeRealPlanes,
                    F_.SixA1OneRealPlane, F_.ConicLocus, F_.TwoD4TwoA1]


@pytest.mark.parametrize("signs,want", [
    ((1, 1, 1, 1), FiberType.Empty), ((-1, -1, -1, -1), FiberType.Empty),
    ((1, 1, 1, -1), FiberType.Sphere), ((1, -1, -1, -1), FiberType.Sphere),
    ((1, 1, -1, -1), FiberType.Hyperboloid), ((1, 1, 1, 0), FiberType.Point),
    ((1, 1, -1, 0), FiberType.Cone), ((1, -1, 0, 0), FiberType.Degenerate),
])
def test_fibre_types(signs, want):
    assert classify_quadric_fiber(signs) is want
    assert want.nonempty == (want is not FiberType.Empty)


def test_fibre_type_input_checks():
    with pytest.raises(ValueError):
        classify_quadric_fiber((1, 1, 2, 0))
    assert fiber_type_from_signature(2, 2) is FiberType.Hyperboloid


def _brute_runs(flags):
    n = len(flags)
    if all(flags):
        return 1
    # rotate so that position 0 is False, then count linear runs
    k = flags.index(False)
    rot = flags[k:] + flags[:k]
    runs, prev = 0, False
    for f in rot:
        runs += f and not prev
        prev = f
    return runs


@given(st.lists(st.booleans(), min_size=1, max_size=30))
def test_circular_runs(flags):
    expect = 0 if not any(flags) else _brute_runs(flags)
    assert count_circular_runs(flags) == expect
    # rotation invariance
    assert count_circular_runs(flags[3:] + flags[:3]) == expect


@pytest.mark.parametrize("family", QUADRIC_FAMILIES, ids=lambda f: f.value)
def test_chart_independence(family):
    for p in draws(family, 5, seed=21):
        g = bundle_for(family, p)
        assert component_count_over_line(g).count == component_count_over_line(g, chart=1).count


@pytest.mark.parametrize("family", QUADRIC_FAMILIES, ids=lambda f: f.value)
def test_exact_count_against_fibre_scan(family):
    checked = 0
    for p in draws(family, 12, seed=22):
        g = bundle_for(family, p)
        scan = fiber_scan_p1(g, 2048)
        if not scan.stable:
            continue  # a boundary too close for the float grid
        checked += 1
        assert component_count_over_line(g).count == scan.component_count
    assert checked >= 6


def test_arcs_alternate_with_boundaries():
    for p in draws(F_.TwoD4MinusQ, 5, seed=23):
        dec = decompose_base(bundle_for(F_.TwoD4MinusQ, p))
        assert len(dec.arcs) == max(1, len(dec.boundaries))
        roots = [b for b in dec.boundaries if b.root is not None]
        assert all(float(a) < float(b) for a, b in zip(roots, roots[1:]))


def _generic(family, p):
    d = conic_delta_derived(p) if family is F_.ConicLocus else discriminant_polynomial(family, p)
    ds = d if isinstance(d, tuple) else (d,)
    return all(x.degree >= 3 and is_squarefree(x) for x in ds)


@pytest.mark.parametrize("family", [F_.TwoD4MinusQ, F_.TwoD4PlusQ, F_.TwoA3TwoA1ThreePlanes,
                                    F_.SixA1OneRealPlane], ids=lambda f: f.value)
def test_root_criteria_match_exact_count(family):
    for p in draws(family, 25, seed=24, accept=lambda q: _generic(family, q)):
        assert component_count_over_line(bundle_for(family, p)).count == criterion_components(family, p)


def test_conic_criterion_with_square_completed_quartic():
    fam = F_.ConicLocus
    for p in draws(fam, 25, seed=24, accept=lambda q: _generic(fam, q)):
        want = 2 if conic_locus_disconnected(p, conic_delta_derived) else 1
        assert component_count_over_line(bundle_for(fam, p)).count == want


def test_projection_needs_a_plane_in_x():
    f = build_cubic(F_.TwoD4MinusQ, draws(F_.TwoD4MinusQ, 1)[0])
    with pytest.raises(BundleError):
        quadric_bundle_gram(f, LinearSubspace.parse("Plane", "x1, x2"))
    with pytest.raises(BundleError):
        quadric_bundle_gram(f, LinearSubspace.parse("Line", "x1, x2, x3"))


def test_conic_bundle_model():
    q1, q2, f3 = x4 * x5, x3 * x4, x4 ** 3 + x5 ** 3
    model = conic_bundle_model(q1, q2, f3)
    assert model.region_poly == (q1 * q1 + q2 * q2) * Fr(1, 4) - x3 * f3
    with pytest.raises(BundleError):
        conic_bundle_model(x1 * x4, q2, f3)
    with pytest.raises(BundleError):
        conic_bundle_model(q1, q2, x4 * x5)
