"""Hand-coded root-ordering criteria for the quadric-bundle families.

Each function reads a connectivity (or line-existence) answer directly off the
real roots of a catalog discriminant, exactly as the criterion is stated. They
serve as an independent check on the generic arc decomposition in
:mod:`realcubic.bundles`.
"""

from fractions import Fraction

from .exact.roots import Order, compare_root_to_rational, isolate_real_roots
from .exact.upoly import squarefree_part
from .families import (
    conic_delta, d1_poly, d2_poly, delta1_triple, delta2, delta_2a3_2a1,
)


def _roots(p):
    """Distinct real roots in increasing order."""
    if p.degree <= 0:
        return []
    return isolate_real_roots(squarefree_part(p))


def _lt(r, c):
    return compare_root_to_rational(r, Fraction(c)) == Order.LESS


def _le(r, c):
    return compare_root_to_rational(r, Fraction(c)) in (Order.LESS, Order.EQUAL)


def _gt(r, c):
    return compare_root_to_rational(r, Fraction(c)) == Order.GREATER


def two_d4_minus_two_components(t):
    """q = x4^2 - x5^2: X(R) has two components iff D1 has 4 real roots all below t5."""
    rs = _roots(d1_poly(t))
    return len(rs) == 4 and all(_lt(r, t["t5"]) for r in rs)


def two_d4_minus_line(t):
    """q = x4^2 - x5^2: a real line disjoint from Pi_2 and Pi_3 exists."""
    t1, t2, t3, t4, t5, t6 = (t[f"t{k}"] for k in range(1, 7))
    if t3 == -t5 * t6 and t1 + t2 * t5 + t4 * t5 ** 2 + t5 ** 3 < 0:
        return True
    rs = _roots(d1_poly(t))
    return bool(rs) and _gt(rs[-1], t5)


def two_d4_plus_connected(t):
    """q = x4^2 + x5^2: connectivity from the real roots of D2 against -t5."""
    rs = _roots(d2_poly(t))
    m = -t["t5"]
    if not rs:
        return True
    if len(rs) == 2:
        return _le(rs[0], m)
    if len(rs) == 4:
        return _le(rs[2], m)
    return False


def two_a3_two_a1_disconnected(p):
    """Three real roots of the cubic Delta(x5), all on the side of 0 fixed by sign(t6)."""
    rs = _roots(delta_2a3_2a1(p))
    if len(rs) != 3:
        return False
    if p["t6"] > 0:
        return _gt(rs[0], 0)
    return _lt(rs[2], 0)


def six_a1_three_planes_rational(p):
    """Some permuted Delta_1 has a real root (a real line off one of the planes)."""
    return any(_roots(d) for d in delta1_triple(p))


def six_a1_one_plane_disconnected(p):
    """Root patterns of Delta_2 relative to 0 and 4."""
    rs = _roots(delta2(p))
    if len(rs) == 2:
        return _gt(rs[0], 0) and _lt(rs[1], 4)
    if len(rs) == 4:
        a1, a2, a3, a4 = rs
        if _gt(a1, 0) and _lt(a2, 4):
            return True
        return _lt(a1, 0) and _gt(a3, 0) and _lt(a4, 4)
    return False


def conic_locus_disconnected(p, delta=conic_delta):
    """Four distinct real roots of the conic-locus quartic."""
    d = delta(p)
    return d.degree == 4 and len(_roots(d)) == 4


def criterion_components(family, params):
    """Component count (1 or 2) predicted by the family's root-ordering criterion."""
    from .families import F_, normalize_params

    p = normalize_params(family, params)
    if family == F_.TwoD4MinusQ:
        return 2 if two_d4_minus_two_components(p) else 1
    if family == F_.TwoD4PlusQ:
        return 1 if two_d4_plus_connected(p) else 2
    if family == F_.TwoA3TwoA1ThreePlanes:
        return 2 if two_a3_two_a1_disconnected(p) else 1
    if family == F_.SixA1OneRealPlane:
        return 2 if six_a1_one_plane_disconnected(p) else 1
    if family == F_.ConicLocus:
        return 2 if conic_locus_disconnected(p) else 1
    raise ValueError(f"{family.value} has no root-ordering component criterion")


CRITERION_FAMILIES = ("TwoD4MinusQ", "TwoD4PlusQ", "TwoA3TwoA1ThreePlanes", "SixA1OneRealPlane", "ConicLocus")
