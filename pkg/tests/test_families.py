from fractions import Fraction as Fr

import pytest
from hypothesis import given
from hypothesis import strategies as st

from realcubic.bundles import check_catalog_discriminant, conic_bundle_from_cubic
from realcubic.exact.multipoly import cubic_ring
from realcubic.families import (
    F_, PARAM_NAMES, RAW_FAMILIES, FamilyError, LinearSubspace, build_cubic, catalog_planes,
    conic_delta, conic_delta_derived, contains_subspace, declared_singularities,
    discriminant_polynomial, normalize_params, real_planes_in_x3_section, validate_constraints,
    verify_line_witness, verify_scroll_witness,
)
from sampling import CATALOG_FAMILIES, draws

x1, x2, x3, x4, x5 = cubic_ring()


@pytest.mark.parametrize("family", CATALOG_FAMILIES, ids=lambda f: f.value)
def test_build_cubic_is_a_real_cubic_form(family):
    for p in draws(family, 3, seed=1):
        f = build_cubic(family, p)
        assert f.is_homogeneous(3) and f.is_real() and not f.is_zero()


def test_raw_families_take_no_params():
    for family in RAW_FAMILIES:
        assert normalize_params(family, None) == {}
        with pytest.raises(FamilyError):
            normalize_params(family, {"a": 1})


def test_normalize_params_errors_and_defaults():
    with pytest.raises(FamilyError):
        normalize_params(F_.TwoA5, {})
    with pytest.raises(FamilyError):
        normalize_params(F_.TwoA5, {"b": 0, "c": 1})
    with pytest.raises(FamilyError):
        normalize_params(F_.TwoA5, {"b": 0.5})
    with pytest.raises(FamilyError):
        FamilyId_parse("NoSuchFamily")
    p = {f"t{k}": k for k in range(1, 9)}
    out = normalize_params(F_.TwoA3NoPlane, p)
    assert out["t9"] == 8 and out["t10"] == 7
    assert normalize_params(F_.TwoA5, {"b": "3/6"}) == {"b": Fr(1, 2)}


def FamilyId_parse(name):
    from realcubic.families import FamilyId
    return FamilyId.parse(name)


def test_constraint_violations_are_reported():
    p = {f"t{k}": Fr(1) for k in range(1, 11)}
    p["t10"] = Fr(2)
    v = validate_constraints(F_.TwoA3NoPlane, p)
    assert [x.constraint for x in v] == ["t7 = t10"]
    assert validate_constraints(F_.TwoD4TwoA1, {"a": 1, "b3": 0, "b4": 2})   # b4^2 = 4a
    assert validate_constraints(F_.EightA1, {"a1": -1, "a2": 1, "a3": 1, "variant": 1})
    assert validate_constraints(F_.EightA1, {"a1": 1, "a2": 1, "a3": 1, "variant": 4})
    four = {"a": 1, "b1": Fr(-1, 2), "b2": Fr(-1, 2), "b3": Fr(-1, 2), "b4": Fr(-1, 2), "t1": 3, "t2": 1}
    assert validate_constraints(F_.FourA2, four) == []
    assert validate_constraints(F_.FourA2, four, strict_4a2=True)


@pytest.mark.parametrize("family", CATALOG_FAMILIES, ids=lambda f: f.value)
def test_valid_draws_pass_validation(family):
    for p in draws(family, 3, seed=2):
        assert validate_constraints(family, p) == []


def test_line_witness():
    f = x1 * x2 * x3 + x4 * x5 * (x1 + x2 + x3)
    line = LinearSubspace.parse("Line", "x2, x3, x5")
    plane = LinearSubspace.parse("Plane", "x1 = x4 = 0")
    res = verify_line_witness(f, line, plane)
    assert res.contained and res.disjoint_from_plane
    meets = LinearSubspace.parse("Line", "x1, x2, x3")
    assert verify_line_witness(f, meets, plane).disjoint_from_plane is False
    outside = LinearSubspace.parse("Line", "x1 - x2, x3 - x4, x5 - x1")
    assert not verify_line_witness(f, outside).contained
    with pytest.raises(FamilyError):
        LinearSubspace.parse("Line", "x1, x2, x1 + x2")


def test_scroll_witness():
    qs = ["x1*x2 - x3^2", "x2*x4 - x5^2", "x1*x5 + x3*x4"]
    from realcubic.exact.multipoly import parse_poly
    q = [parse_poly(s) for s in qs]
    f = (x1 + x5) * q[0] + (2 * x3) * q[1] - x4 * q[2]
    assert verify_scroll_witness(f, qs)
    assert not verify_scroll_witness(f + x4 ** 3, qs)


@pytest.mark.parametrize("family", [F_.TwoD4MinusQ, F_.TwoD4PlusQ, F_.TwoD4TwoA1, F_.SixA1ThreeRealPlanes,
                                    F_.SixA1OneRealPlane, F_.TwoA3TwoA1ThreePlanes],
                         ids=lambda f: f.value)
def test_catalog_planes_lie_in_x(family):
    for p in draws(family, 3, seed=4):
        f = build_cubic(family, p)
        planes = catalog_planes(family, p)
        assert planes
        assert all(contains_subspace(f, pl) for pl in planes)


def test_eight_a1_planes():
    for variant, real in ((1, 3), (2, 3), (3, 1)):
        p = {"a1": Fr(4), "a2": Fr(1), "a3": Fr(2), "variant": Fr(variant)}
        planes = catalog_planes(F_.EightA1, p)
        assert len(planes) == 5
        assert sum(pl.is_real() for pl in planes) == real
    with pytest.raises(FamilyError):
        catalog_planes(F_.EightA1, {"a1": Fr(2), "a2": Fr(1), "a3": Fr(2), "variant": Fr(1)})


def test_two_d4_two_a1_real_plane_count():
    assert real_planes_in_x3_section(F_.TwoD4TwoA1, {"a": 1, "b3": 0, "b4": 3}).count == 3   # sqrt 5
    assert real_planes_in_x3_section(F_.TwoD4TwoA1, {"a": 2, "b3": 0, "b4": 3}).count == 3   # rational root
    assert real_planes_in_x3_section(F_.TwoD4TwoA1, {"a": 1, "b3": 0, "b4": 1}).count == 1


@pytest.mark.parametrize("family", [F_.TwoD4MinusQ, F_.TwoD4PlusQ, F_.TwoA3TwoA1ThreePlanes,
                                    F_.SixA1ThreeRealPlanes, F_.SixA1OneRealPlane],
                         ids=lambda f: f.value)
def test_printed_discriminants_match_gram(family):
    for p in draws(family, 10, seed=9):
        assert all(c.agrees for c in check_catalog_discriminant(family, p))


def test_conic_discriminant_square_completion():
    # the Gram matrix always matches the square completion of the normal form
    for p in draws(F_.ConicLocus, 10, seed=9):
        assert all(c.agrees for c in check_catalog_discriminant(F_.ConicLocus, p, conic_delta_derived))
    # the printed quartic agrees when the cross terms a5*a8, a6*a9, a7*a10 vanish
    p = {f"a{k}": Fr(k) for k in range(1, 14)}
    p.update(a8=Fr(0), a9=Fr(0), a10=Fr(0))
    assert conic_delta(p) == conic_delta_derived(p)


def test_conic_bundle_reading():
    p = draws(F_.ConicLocus, 1)[0]
    model = conic_bundle_from_cubic(build_cubic(F_.ConicLocus, p))
    assert model.region_poly.is_homogeneous(4)


@given(st.sampled_from([f for f in CATALOG_FAMILIES if f not in (F_.ConicLocus, F_.Chordal)]),
       st.integers(0, 10 ** 6))
def test_declared_points_are_singular_and_closed_under_conjugation(family, seed):
    from realcubic.singular import conjugation_permutation, is_singular_at

    p = draws(family, 1, seed=seed)[0]
    f = build_cubic(family, p)
    data = declared_singularities(family, p)
    assert all(is_singular_at(f, pt) for pt in data.points)
    perm, real = conjugation_permutation(data.points)
    assert real == []


def test_discriminant_polynomial_only_for_catalog():
    with pytest.raises(FamilyError):
        discriminant_polynomial(F_.TwoA5, {"b": 0})
    assert set(PARAM_NAMES[F_.ConicLocus]) == {f"a{k}" for k in range(1, 14)}
