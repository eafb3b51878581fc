from fractions import Fraction as Fr

import pytest
from hypothesis import given
from hypothesis import strategies as st

from realcubic.exact.gaussrat import I
from realcubic.exact.multipoly import cubic_ring, parse_poly
from realcubic.exact.upoly import UPoly
from realcubic.families import F_, build_cubic, declared_singularities, eight_a1_points
from realcubic.singular import (
    A, BEYOND_CAP, D4, ProjPoint, SingularityType, ade_type, conjugation_permutation, cycles,
    find_real_singular_points, hessian_corank, is_cone, is_singular_at, node_over_quadratic,
)
from sampling import draws

x1, x2, x3, x4, x5 = cubic_ring()
ORIGIN = ProjPoint([0, 0, 0, 0, 1])


def test_ade_on_local_models():
    quad = x1 * x1 + x2 * x2 + x3 * x3
    assert ade_type(x5 * (quad + x4 * x4), ORIGIN) == A(1)
    assert ade_type(x5 * quad + x4 ** 3, ORIGIN) == A(2)


def test_d4_model():
    # x5 (x1^2 + x2^2) + x3^3 + x4^3: corank 2 with a nondegenerate binary cubic
    f = x5 * (x1 * x1 + x2 * x2) + x3 ** 3 + x4 ** 3
    assert hessian_corank(f, ORIGIN) == 2
    assert ade_type(f, ORIGIN) == D4


def test_smooth_point_is_rejected():
    f = x1 ** 3 + x2 ** 3 + x3 ** 3 + x4 ** 3 + x5 ** 3
    p = ProjPoint([1, -1, 0, 0, 0])
    assert f.evaluate(list(p.coords)) == 0
    assert not is_singular_at(f, p)
    with pytest.raises(ValueError):
        ade_type(f, p)


@pytest.mark.parametrize("family,want", [
    (F_.TwoA3NoPlane, A(3)), (F_.TwoA4, A(4)), (F_.TwoA5, A(5)), (F_.TwoD4MinusQ, D4),
    (F_.TwoD4PlusQ, D4),
])
def test_catalog_types_on_draws(family, want):
    for p in draws(family, 3, seed=11):
        f = build_cubic(family, p)
        data = declared_singularities(family, p)
        assert all(t == want for t in data.types)
        for pt in data.points:
            assert ade_type(f, pt) == want


def test_cap_reports_beyond():
    p = draws(F_.TwoA5, 1)[0]
    f = build_cubic(F_.TwoA5, p)
    pt = declared_singularities(F_.TwoA5, p).points[0]
    assert ade_type(f, pt, cap=4) == BEYOND_CAP
    assert ade_type(f, pt, cap=5) == A(5)


def test_singularity_type_parse_roundtrip():
    for t in (A(1), A(7), D4, BEYOND_CAP):
        assert SingularityType.parse(str(t)) == t
    with pytest.raises(ValueError):
        SingularityType.parse("E6")
    with pytest.raises(ValueError):
        A(0)


def test_projpoint_normalisation_and_parse():
    assert ProjPoint([2, 2 * I, 0, 0, 0]) == ProjPoint([1, I, 0, 0, 0])
    assert ProjPoint.parse("[1:i:0:0:1/2]") == ProjPoint([2, 2 * I, 0, 0, 1])
    assert ProjPoint([1, I, 0, 0, 0]).conj() == ProjPoint([1, -I, 0, 0, 0])
    assert not ProjPoint([1, I, 0, 0, 0]).is_real()
    with pytest.raises(ValueError):
        ProjPoint([0, 0, 0, 0, 0])


def test_is_cone():
    assert is_cone(x1 ** 3 + x2 ** 3 + x1 * x2 * x3)          # no x4, x5
    assert not is_cone(x1 ** 3 + x2 ** 3 + x3 ** 3 + x4 ** 3 + x5 ** 3)
    # a linear change of variables hides the cone
    y1, y2, y3 = x1 + x4, x2 - x5, x3 + x4 + x5
    assert is_cone(y1 ** 3 + y2 ** 3 + y3 ** 3 + y1 * y2 * y3)


@given(st.sampled_from([1, 2, 3]))
def test_conjugation_permutation_eight_nodes(variant):
    perm, real = conjugation_permutation(eight_a1_points(variant, 1))
    assert real == []
    assert all(perm[perm[i]] == i for i in range(8))
    assert len(cycles(perm)) == 4


def test_conjugation_permutation_rejects_open_sets():
    with pytest.raises(ValueError):
        conjugation_permutation([ProjPoint([1, I, 0, 0, 0])])


def test_cycles():
    assert cycles([1, 0, 2, 4, 5, 3]) == [(0, 1), (3, 4, 5)]


def test_real_singular_search_finds_a_node():
    # cone-free cubic with a real node at [0:0:0:0:1]
    f = x5 * (x1 * x1 + x2 * x2 - x3 * x3 - x4 * x4) + x1 ** 3 + x2 ** 3 + x3 ** 3 + x4 ** 3
    res = find_real_singular_points(f)
    assert ORIGIN in res.points
    for pt in res.points:
        assert is_singular_at(f, pt)


def test_real_singular_search_on_catalog_draws():
    for family in (F_.TwoA5, F_.FourA1Gen, F_.TwoD4TwoA1):
        for p in draws(family, 2, seed=5):
            assert find_real_singular_points(build_cubic(family, p)).points == []


def test_node_over_quadratic():
    # EightA1 with a1 = 2: the pair [1:0:0:0:+-i sqrt 2] is not over Q(i)
    p = {"a1": Fr(2), "a2": Fr(1), "a3": Fr(3), "variant": Fr(1)}
    f = build_cubic(F_.EightA1, p)
    data = declared_singularities(F_.EightA1, p)
    assert len(data.points) == 6 and len(data.quadratic) == 1
    coords, modulus, typ = data.quadratic[0]
    assert node_over_quadratic(f, coords, modulus) == (True, True)
    s = UPoly.x()
    shifted = [UPoly.const(1), UPoly(), UPoly(), UPoly.const(1), s]
    assert node_over_quadratic(f, shifted, modulus) == (False, False)
    with pytest.raises(ValueError):
        node_over_quadratic(f, coords, s)


def test_parse_then_ade():
    f = parse_poly("x5*(x1^2+x2^2+x3^2+x4^2) + x1^3 + x2^3")
    assert ade_type(f, ORIGIN) == A(1)
