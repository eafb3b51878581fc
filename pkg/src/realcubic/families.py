"""Normal forms of real singular cubic threefolds, their parameters and witnesses.

Every family is keyed by a :class:`FamilyId`. A family either has a
parametrised normal form (``build_cubic``) or accepts a raw cubic together
with declared metadata.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations

from .exact.gaussrat import GaussRat, I
from .exact.linalg import nullspace, rank, row_reduce, solve
from .exact.multipoly import X5, MultiPoly, cubic_ring, parse_poly
from .exact.upoly import UPoly
from .singular import A, D4, ProjPoint


class FamilyError(ValueError):
    """Bad family/parameter combination (wrong arity, non-rational value, ...)."""


class FamilyId(Enum):
    TwoA1 = "TwoA1"
    TwoA2 = "TwoA2"
    TwoA3NoPlane = "TwoA3NoPlane"
    TwoA3Plane = "TwoA3Plane"
    TwoA4 = "TwoA4"
    TwoA5 = "TwoA5"
    TwoD4MinusQ = "TwoD4MinusQ"
    TwoD4PlusQ = "TwoD4PlusQ"
    FourA1Plane = "FourA1Plane"
    FourA1Gen = "FourA1Gen"
    TwoA2TwoA1 = "TwoA2TwoA1"
    FourA2 = "FourA2"
    TwoA3TwoA1ThreePlanes = "TwoA3TwoA1ThreePlanes"
    TwoA3TwoA1OnePlane = "TwoA3TwoA1OnePlane"
    TwoD4TwoA1 = "TwoD4TwoA1"
    SixA1NoPlane = "SixA1NoPlane"
    SixA1OnePlane = "SixA1OnePlane"
    SixA1ThreeRealPlanes = "SixA1ThreeRealPlanes"
    SixA1OneRealPlane = "SixA1OneRealPlane"
    TwoA2FourA1 = "TwoA2FourA1"
    TwoA3FourA1 = "TwoA3FourA1"
    EightA1 = "EightA1"
    ConicLocus = "ConicLocus"
    Chordal = "Chordal"

    @classmethod
    def parse(cls, name):
        try:
            return cls(name)
        except ValueError:
            raise FamilyError(f"unknown family {name!r}") from None


F_ = FamilyId

T10 = tuple(f"t{k}" for k in range(1, 11))
FOUR_POINT = ("a", "b1", "b2", "b3", "b4", "t1", "t2")

PARAM_NAMES = {
    F_.TwoA1: T10 + ("q_case", "lam"),
    F_.TwoA2: T10 + ("q_case", "lam"),
    F_.TwoA3NoPlane: T10,
    F_.TwoA4: T10,
    F_.TwoA5: ("b",),
    F_.TwoD4MinusQ: tuple(f"t{k}" for k in range(1, 7)),
    F_.TwoD4PlusQ: tuple(f"t{k}" for k in range(1, 7)),
    F_.FourA1Gen: FOUR_POINT,
    F_.TwoA2TwoA1: FOUR_POINT,
    F_.FourA2: FOUR_POINT,
    F_.TwoA3TwoA1ThreePlanes: ("a", "b1", "b2", "b3", "b4", "t2", "t6"),
    F_.TwoD4TwoA1: ("a", "b3", "b4"),
    F_.SixA1ThreeRealPlanes: ("a", "a1", "a2", "a3"),
    F_.SixA1OneRealPlane: ("a", "a1", "a2", "a3"),
    F_.EightA1: ("a1", "a2", "a3", "variant"),
    F_.ConicLocus: tuple(f"a{k}" for k in range(1, 14)),
    F_.Chordal: (),
}

# Parameters that may be omitted; the value is filled from another parameter.
DEFAULTS = {
    F_.TwoA3NoPlane: {"t9": "t8", "t10": "t7"},
    F_.TwoA4: {"t9": "t8", "t10": "t7"},
}

# No printed normal form: a raw cubic (and optionally declared points/types).
RAW_FAMILIES = frozenset({
    F_.TwoA3Plane, F_.FourA1Plane, F_.SixA1NoPlane, F_.SixA1OnePlane,
    F_.TwoA3TwoA1OnePlane, F_.TwoA2FourA1, F_.TwoA3FourA1,
})

NON_ISOLATED = frozenset({F_.ConicLocus, F_.Chordal})


def as_rational(value, name="value"):
    """Exact rational from an int, Fraction or ``"p/q"`` string (no floats)."""
    if isinstance(value, bool):
        raise FamilyError(f"{name}: booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FamilyError(f"{name}: cannot parse {value!r} as a rational ({exc})") from None
    raise FamilyError(f"{name}: expected an exact rational, got {type(value).__name__}")


def normalize_params(family, params):
    """Validated ``{name: Fraction}`` record with defaults filled in."""
    family = family if isinstance(family, FamilyId) else FamilyId.parse(family)
    if family in RAW_FAMILIES:
        if params:
            raise FamilyError(f"{family.value} takes a raw cubic, not parameters")
        return {}
    names = PARAM_NAMES[family]
    params = dict(params or {})
    unknown = set(params) - set(names)
    if unknown:
        raise FamilyError(f"{family.value}: unknown parameters {sorted(unknown)}")
    out = {k: as_rational(v, k) for k, v in params.items()}
    for k, src in DEFAULTS.get(family, {}).items():
        if k not in out and src in out:
            out[k] = out[src]
    missing = [n for n in names if n not in out]
    if missing:
        raise FamilyError(f"{family.value}: missing parameters {missing}")
    return {n: out[n] for n in names}


# -- the (q1, q2) pair table for two conjugate singular points ---------------

def _q_table(lam):
    r = MultiPoly.gens(X5)
    x4, x5 = r[3], r[4]
    return {
        1: (x4 * x4, x4 * x4 * lam),
        2: (x4 * x4, x5 * x5),
        3: (x4 * x4, x4 * x5),
        4: (x4 * x4, (x4 * x4 - x5 * x5) * lam),
        5: (x4 * x4, (x4 * x4 + x5 * x5) * lam),
        6: (x4 * x5, x4 * x5 * lam),
        7: (x4 * x5, x4 * (x4 - x5) * lam),
        8: (x4 * x5, (x4 * x4 - x5 * x5) * lam),
        9: (x4 * x5, (x4 * x4 + x5 * x5) * lam),
        10: (x4 * x4 + x5 * x5, x4 * x4 + x5 * x5 * lam),
    }


Q_CASES_WITH_LAMBDA = frozenset({1, 4, 5, 6, 7, 8, 9, 10})


def q_pair(case, lam=1):
    """Row of the (q1, q2) classification table; ``lam`` is ignored where absent."""
    table = _q_table(Fraction(lam))
    if case not in table:
        raise FamilyError(f"q_case must be 1..{len(table)}, got {case}")
    return table[case]


def f3_form(t):
    """The generic cubic in x3, x4, x5 with coefficients t1..t10."""
    x1, x2, x3, x4, x5 = cubic_ring()
    return (t["t1"] * x3 ** 3 + x3 ** 2 * (t["t2"] * x4 + t["t3"] * x5)
            + x3 * (t["t4"] * x4 ** 2 + t["t5"] * x5 ** 2 + t["t6"] * x4 * x5)
            + t["t7"] * x4 ** 2 * x5 + t["t8"] * x5 ** 2 * x4 + t["t9"] * x4 ** 3 + t["t10"] * x5 ** 3)


def two_point_form(q1, q2, f3):
    x1, x2, x3, x4, x5 = cubic_ring()
    return (x1 ** 2 + x2 ** 2) * x3 + x1 * q1 + x2 * q2 + f3


def _a3_q():
    x1, x2, x3, x4, x5 = cubic_ring()
    return x4 * x5, (x4 * x4 - x5 * x5) * Fraction(1, 2)


def _four_point(p):
    x1, x2, x3, x4, x5 = cubic_ring()
    return ((x1 + x2) * (x3 ** 2 + x4 ** 2) + (x3 + x4) * (x1 ** 2 + x2 ** 2) + p["a"] * x5 ** 3
            + x5 ** 2 * (p["b1"] * x1 + p["b2"] * x2 + p["b3"] * x3 + p["b4"] * x4)
            + x5 * (p["t1"] * (x1 * x3 + x2 * x4) + p["t2"] * (x1 * x4 + x2 * x3)))


def _eight_a1(p):
    x1, x2, x3, x4, x5 = cubic_ring()
    v = int(p["variant"])
    if v != p["variant"] or v not in (1, 2, 3):
        raise FamilyError("EightA1 variant must be 1, 2 or 3")
    s13 = -1 if v == 2 else 1   # a1 (x1^2 +- x3^2) x4
    s35 = -1 if v == 1 else 1   # a2 (x2^2 x5 +- x3^2 x5 + x4^2 x5)
    return (p["a1"] * (x1 ** 2 + s13 * x3 ** 2) * x4 + x4 * x5 ** 2
            + p["a2"] * (x2 ** 2 * x5 + s35 * x3 ** 2 * x5 + x4 ** 2 * x5) + p["a3"] * x3 * x4 * x5)


def build_cubic(family, params=None):
    """Normal form of ``family`` with the parameters substituted."""
    family = family if isinstance(family, FamilyId) else FamilyId.parse(family)
    if family in RAW_FAMILIES:
        raise FamilyError(f"{family.value} has no normal form; supply the cubic directly")
    p = normalize_params(family, params)
    x1, x2, x3, x4, x5 = cubic_ring()
    if family in (F_.TwoA1, F_.TwoA2):
        case = int(p["q_case"])
        if case != p["q_case"]:
            raise FamilyError("q_case must be an integer")
        q1, q2 = q_pair(case, p["lam"])
        return two_point_form(q1, q2, f3_form(p))
    if family in (F_.TwoA3NoPlane, F_.TwoA4):
        q1, q2 = _a3_q()
        return two_point_form(q1, q2, f3_form(p))
    if family is F_.TwoA5:
        b = p["b"]
        return ((x1 ** 2 + x2 ** 2) * x3 + x3 ** 3 + x2 * (x4 ** 2 - x5 ** 2) * Fraction(1, 2)
                + x1 * x4 * x5 + b * x3 * (x4 ** 2 + x5 ** 2))
    if family in (F_.TwoD4MinusQ, F_.TwoD4PlusQ):
        sign = -1 if family is F_.TwoD4MinusQ else 1
        return ((x1 ** 2 + x2 ** 2) * x3 + p["t1"] * x3 ** 3 + x3 ** 2 * (p["t2"] * x4 + p["t3"] * x5)
                + x3 * (p["t4"] * x4 ** 2 + p["t5"] * x5 ** 2 + p["t6"] * x4 * x5)
                + x4 * (x4 ** 2 + sign * x5 ** 2))
    if family in (F_.FourA1Gen, F_.TwoA2TwoA1, F_.FourA2):
        return _four_point(p)
    if family is F_.TwoA3TwoA1ThreePlanes:
        return (x4 * (x1 ** 2 + x2 ** 2) + p["a"] * x5 ** 3
                + x5 ** 2 * (p["b1"] * x1 + p["b2"] * x2 + p["b3"] * x3 + p["b4"] * x4)
                + x5 * (p["t2"] * (x1 + x2) * x4 + p["t6"] * (x3 ** 2 + x4 ** 2)))
    if family is F_.TwoD4TwoA1:
        return ((x1 ** 2 + x2 ** 2) * x3 + x5 * (x3 ** 2 + x4 ** 2)
                + (p["b3"] * x3 + p["b4"] * x4) * x5 ** 2 + p["a"] * x5 ** 3)
    if family is F_.SixA1ThreeRealPlanes:
        return (x2 * x3 * x4 + p["a"] * x1 ** 3 + x1 ** 2 * (p["a1"] * x2 + p["a2"] * x3 + p["a3"] * x4)
                + x1 * (x2 ** 2 + x3 ** 2 + x4 ** 2 + x5 ** 2))
    if family is F_.SixA1OneRealPlane:
        return (x2 * (x3 ** 2 + x4 ** 2) + p["a"] * x1 ** 3
                + x1 ** 2 * (p["a1"] * x2 + p["a2"] * x3 + p["a3"] * x4)
                + x1 * (x2 ** 2 - x4 * x5 + x5 ** 2))
    if family is F_.EightA1:
        return _eight_a1(p)
    if family is F_.ConicLocus:
        a = p
        c = a["a1"] * x4 ** 3 + a["a2"] * x4 * x5 ** 2 + a["a3"] * x4 ** 2 * x5 + a["a4"] * x5 ** 3
        q1 = a["a5"] * x4 ** 2 + a["a6"] * x4 * x5 + a["a7"] * x5 ** 2
        q2 = a["a8"] * x4 ** 2 + a["a9"] * x4 * x5 + a["a10"] * x5 ** 2
        q3 = a["a11"] * x4 ** 2 + a["a12"] * x4 * x5 + a["a13"] * x5 ** 2
        return c + x1 * q1 + x2 * q2 + x3 * q3 + x4 * (x1 ** 2 + x2 ** 2 + x3 ** 2)
    if family is F_.Chordal:
        return (x1 ** 2 * x2 + x1 * x2 ** 2 + x2 * x3 ** 2 + x1 * x4 ** 2
                - 2 * x3 * x4 * x5 - (x1 + x2) * x5 ** 2)
    raise FamilyError(f"no builder for {family.value}")  # pragma: no cover


# -- constraints --------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    constraint: str
    citation: str

    def __str__(self):
        return f"{self.constraint} violated"


def validate_constraints(family, params=None, strict_4a2=False):
    """List of violated defining conditions (empty when the record is valid)."""
    family = family if isinstance(family, FamilyId) else FamilyId.parse(family)
    if family in RAW_FAMILIES:
        return []
    p = normalize_params(family, params)
    out = []

    def need(ok, text, cite):
        if not ok:
            out.append(Violation(text, cite))

    if family in (F_.TwoA1, F_.TwoA2):
        case = p["q_case"]
        need(case.denominator == 1 and 1 <= case <= 10, "q_case in 1..10", "two-point (q1,q2) table")
        if case in Q_CASES_WITH_LAMBDA:
            need(p["lam"] > 0, "lam > 0", "two-point (q1,q2) table")
        if not out:
            from .singular import ade_type
            want = A(1) if family is F_.TwoA1 else A(2)
            got = ade_type(build_cubic(family, p), TWO_POINTS[0])
            need(got == want, f"singularity type {want} at [1:i:0:0:0] (computed {got})",
                 "two-point normal form")
    if family in (F_.TwoA3NoPlane, F_.TwoA4):
        need(p["t7"] == p["t10"], "t7 = t10", "A3 condition on f3")
        need(p["t8"] == p["t9"], "t8 = t9", "A3 condition on f3")
    if family is F_.TwoA4:
        need(p["t6"] == -8 * p["t7"] * p["t8"], "t6 = -8*t7*t8", "A4 condition on f3")
        need(p["t4"] == p["t5"] + 4 * p["t7"] ** 2 - 4 * p["t8"] ** 2, "t4 = t5 + 4*t7^2 - 4*t8^2",
             "A4 condition on f3")
    if family in (F_.TwoA2TwoA1, F_.FourA2):
        c = -(p["t1"] - p["t2"]) ** 2 / 8
        if family is F_.TwoA2TwoA1:
            need(p["b1"] == c and p["b2"] == c, "b1 = b2 = -(t1-t2)^2/8", "2A2+2A1 condition")
        elif strict_4a2:
            need(p["b1"] == p["b2"] == p["b3"] == p["b4"] + c, "b1 = b2 = b3 = b4 - (t1-t2)^2/8",
                 "4A2 condition (literal reading)")
        else:
            need(p["b1"] == p["b2"] == p["b3"] == p["b4"] == c, "b1 = b2 = b3 = b4 = -(t1-t2)^2/8",
                 "4A2 condition (chained reading)")
    if family is F_.TwoA3TwoA1ThreePlanes:
        need(p["t6"] != 0, "t6 != 0", "2A3+2A1 three-plane normal form")
    if family is F_.TwoD4TwoA1:
        need(p["a"] != 0, "a != 0", "2D4+2A1 normal form")
        need(p["b4"] ** 2 != 4 * p["a"], "b4^2 != 4*a", "2D4+2A1 planes distinct")
    if family is F_.EightA1:
        need(p["variant"] in (1, 2, 3), "variant in {1,2,3}", "8A1 realisations")
        need(p["a1"] > 0, "a1 > 0", "8A1 without real nodes ([1:0:0:0:+-sqrt(-a1)] is real for a1 < 0)")
        need(p["a2"] != 0, "a2 != 0", "8A1 realisations")
    return out


# -- singular points and declared types ---------------------------------------

def _pts(*rows):
    return [ProjPoint(r) for r in rows]


TWO_POINTS = _pts([1, I, 0, 0, 0], [1, -I, 0, 0, 0])
FOUR_POINTS = TWO_POINTS + _pts([0, 0, 1, I, 0], [0, 0, 1, -I, 0])
SIX_THREE_REAL = _pts([0, 0, 0, 1, I], [0, 0, 0, 1, -I], [0, 1, 0, 0, I],
                      [0, 1, 0, 0, -I], [0, 0, 1, 0, I], [0, 0, 1, 0, -I])
SIX_ONE_REAL = _pts([0, 0, 1, I, 0], [0, 0, 1, I, I], [0, 1, 0, 0, I],
                    [0, 1, 0, 0, -I], [0, 0, 1, -I, 0], [0, 0, 1, -I, -I])


def eight_a1_points(variant, a1=1):
    """The eight nodes of the 8A1 realisation ``variant``, in the listed order.

    Two nodes are [1:0:0:0:+-sqrt(-a1)], so exact Q(i) coordinates need
    +-a1 to be a rational square; the conjugation pattern only depends on
    the sign of a1, so callers that only need combinatorics pass a1 = +-1.
    """
    v = int(variant)
    if v not in (1, 2, 3):
        raise FamilyError("EightA1 variant must be 1, 2 or 3")
    a1 = Fraction(a1)
    if a1 == 0:
        raise FamilyError("EightA1 needs a1 != 0")
    r = _exact_sqrt(-a1)
    if r is None:
        raise FamilyError("EightA1 nodes are irrational unless -a1 or a1 is a rational square")
    # x1 : x2 : x3 pattern of the last four nodes (x4 = x5 = 0)
    c2, c3 = {1: (I, I), 2: (I, 1), 3: (1, I)}[v]
    return _pts(
        [0, 1, 0, I, 0], [0, 1, 0, -I, 0],
        [1, 0, 0, 0, r], [1, 0, 0, 0, -r],
        [1, c2, c3, 0, 0], [1, -c2, -c3, 0, 0], [1, -c2, c3, 0, 0], [1, c2, -c3, 0, 0],
    )


@dataclass
class SingularData:
    points: list
    types: list
    # conjugate pairs not defined over Q(i): (coords as UPolys in s, minimal polynomial of s, type)
    quadratic: list = field(default_factory=list)


def declared_singularities(family, params=None):
    """Catalog singular points and their ADE types (None for computed/raw cases)."""
    family = family if isinstance(family, FamilyId) else FamilyId.parse(family)
    p = normalize_params(family, params) if family not in RAW_FAMILIES else {}
    two = {F_.TwoA1: A(1), F_.TwoA2: A(2), F_.TwoA3NoPlane: A(3), F_.TwoA4: A(4), F_.TwoA5: A(5),
           F_.TwoD4MinusQ: D4, F_.TwoD4PlusQ: D4}
    if family in two:
        return SingularData(list(TWO_POINTS), [two[family]] * 2)
    if family is F_.FourA1Gen:
        return SingularData(list(FOUR_POINTS), [A(1)] * 4)
    if family is F_.TwoA2TwoA1:
        return SingularData(list(FOUR_POINTS), [A(2), A(2), A(1), A(1)])
    if family is F_.FourA2:
        return SingularData(list(FOUR_POINTS), [A(2)] * 4)
    if family is F_.TwoA3TwoA1ThreePlanes:
        return SingularData(list(FOUR_POINTS), [A(3), A(3), A(1), A(1)])
    if family is F_.TwoD4TwoA1:
        return SingularData(list(FOUR_POINTS), [D4, D4, A(1), A(1)])
    if family is F_.SixA1ThreeRealPlanes:
        return SingularData(list(SIX_THREE_REAL), [A(1)] * 6)
    if family is F_.SixA1OneRealPlane:
        return SingularData(list(SIX_ONE_REAL), [A(1)] * 6)
    if family is F_.EightA1:
        if _exact_sqrt(-p["a1"]) is not None:
            return SingularData(eight_a1_points(p["variant"], p["a1"]), [A(1)] * 8)
        # [1:0:0:0:s] with s^2 + a1 = 0
        s = UPoly.x()
        pair = ([UPoly.const(1), UPoly(), UPoly(), UPoly(), s], s * s + p["a1"], A(1))
        six = [q for q in eight_a1_points(p["variant"], 1) if q.coords[0] == 0 or q.coords[4] == 0]
        return SingularData(six, [A(1)] * 6, [pair])
    if family is F_.ConicLocus:
        # sample points of the singular conic x1^2+x2^2+x3^2 = x4 = x5 = 0
        return SingularData(_pts([1, I, 0, 0, 0], [1, -I, 0, 0, 0], [0, 1, I, 0, 0]), [None] * 3)
    if family is F_.Chordal:
        return SingularData(list(CHORDAL_SAMPLE_POINTS), [None] * len(CHORDAL_SAMPLE_POINTS))
    return SingularData([], [])


# Points of the (pointless) singular quartic curve of the chordal cubic.
CHORDAL_SAMPLE_POINTS = _pts([1, 0, I, 0, 0], [1, 0, -I, 0, 0], [0, 1, 0, I, 0], [0, 1, 0, -I, 0])


# -- linear subspaces and witnesses ------------------------------------------

def _linear_coeffs(form):
    if not form.is_homogeneous(1) or form.is_zero():
        raise FamilyError(f"{form} is not a nonzero linear form")
    n = form.nvars
    return tuple(form.coeff(tuple(int(i == j) for i in range(n))) for j in range(n))


@dataclass(frozen=True)
class LinearSubspace:
    """Line (3 equations) or plane (2 equations) in P^4, given by linear forms."""

    kind: str
    equations: tuple

    def __post_init__(self):
        need = {"Line": 3, "Plane": 2}.get(self.kind)
        if need is None:
            raise FamilyError(f"kind must be Line or Plane, got {self.kind!r}")
        eqs = tuple(tuple(GaussRat.coerce(c) if isinstance(c, GaussRat) else Fraction(c) for c in e)
                    for e in self.equations)
        if len(eqs) != need or any(len(e) != 5 for e in eqs):
            raise FamilyError(f"a {self.kind} needs {need} equations in 5 variables")
        if rank(eqs) != need:
            raise FamilyError(f"degenerate {self.kind}: equations are dependent")
        object.__setattr__(self, "equations", eqs)

    @classmethod
    def from_forms(cls, kind, forms):
        forms = [parse_poly(f) if isinstance(f, str) else f for f in forms]
        return cls(kind, tuple(_linear_coeffs(f) for f in forms))

    @classmethod
    def parse(cls, kind, text):
        """``"x1+x2, x1-x5, x3+x4+x5"`` (commas or ``=`` separate the forms)."""
        parts = [s for s in text.replace("{", "").replace("}", "").replace("=", ",").split(",")
                 if s.strip() and s.strip() != "0"]
        return cls.from_forms(kind, parts)

    @classmethod
    def span(cls, points):
        """The linear span of 2 (line) or 3 (plane) projective points."""
        rows = [list(p.coords) for p in points]
        kind = {2: "Line", 3: "Plane"}[len(rows)]
        eqs = nullspace(rows)
        if len(eqs) != 5 - len(rows):
            raise FamilyError("points are not in general position")
        return cls(kind, tuple(tuple(e) for e in eqs))

    def canonical(self):
        rref, _ = row_reduce(self.equations)
        return tuple(tuple(r) for r in rref)

    def __eq__(self, other):
        return isinstance(other, LinearSubspace) and self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def is_real(self):
        return all(not isinstance(c, GaussRat) or c.im == 0 for r in self.canonical() for c in r)

    def basis(self):
        """Spanning vectors of the subspace (2 for a line, 3 for a plane)."""
        return nullspace(self.equations)

    def contains_point(self, p):
        return all(sum((a * b for a, b in zip(e, p.coords)), Fraction(0)) == 0 for e in self.equations)

    def forms(self):
        xs = cubic_ring()
        return [sum((x * c for x, c in zip(xs, e) if c), MultiPoly(X5)) for e in self.equations]

    def __str__(self):
        return "{" + " = ".join(str(f) for f in self.forms()) + " = 0}"


def restrict(f, subspace):
    """F pulled back along the parametrisation s_0 v_0 + ... of the subspace."""
    basis = subspace.basis()
    names = tuple(f"s{k}" for k in range(len(basis)))
    ss = MultiPoly.gens(names)
    images = [sum((s * v[i] for s, v in zip(ss, basis) if v[i]), MultiPoly(names)) for i in range(5)]
    return f.substitute(images, names)


def contains_subspace(f, subspace):
    return restrict(f, subspace).is_zero()


@dataclass(frozen=True)
class LineWitnessResult:
    contained: bool
    disjoint_from_plane: bool | None


def verify_line_witness(f, line, plane=None):
    """Is the line in X, and is it disjoint from the plane (rank of the 5 forms)?"""
    if line.kind != "Line":
        raise FamilyError("witness must be a line")
    if plane is not None and plane.kind != "Plane":
        raise FamilyError("second subspace must be a plane")
    contained = contains_subspace(f, line)
    disjoint = None
    if plane is not None:
        disjoint = rank(list(line.equations) + list(plane.equations)) == 5
    return LineWitnessResult(contained, disjoint)


def verify_scroll_witness(f, quadrics):
    """True iff F = l1*Q1 + l2*Q2 + l3*Q3 for some linear forms l_i (exact solve)."""
    quadrics = [parse_poly(q) if isinstance(q, str) else q for q in quadrics]
    xs = cubic_ring()
    columns = [x * q for q in quadrics for x in xs]
    monos = sorted({e for c in columns for e in c.terms} | set(f.terms))
    rows = [[c.coeff(m) for c in columns] for m in monos]
    rhs = [f.coeff(m) for m in monos]
    return solve(rows, rhs) is not None


# -- planes ------------------------------------------------------------------

def _plane(*forms):
    return LinearSubspace.from_forms("Plane", forms)


def catalog_planes(family, params=None):
    """All catalog planes of the family (real and complex), verified to lie in X."""
    family = family if isinstance(family, FamilyId) else FamilyId.parse(family)
    p = normalize_params(family, params)
    f = build_cubic(family, p)
    if family is F_.TwoD4MinusQ:
        planes = [_plane("x3", "x4"), _plane("x3", "x4+x5"), _plane("x3", "x4-x5")]
    elif family is F_.TwoD4PlusQ:
        planes = [_plane("x3", "x4"), _plane("x3", "x4+I*x5"), _plane("x3", "x4-I*x5")]
    elif family is F_.TwoD4TwoA1:
        planes = [_plane("x1+I*x2", "x5"), _plane("x1-I*x2", "x5"), _plane("x3", "x5")]
        planes += _radical_planes(p["a"], p["b4"])
    elif family is F_.SixA1ThreeRealPlanes:
        planes = [_plane("x1", "x2"), _plane("x1", "x3"), _plane("x1", "x4")]
    elif family is F_.SixA1OneRealPlane:
        planes = [_plane("x1", "x2"), _plane("x1", "x3+I*x4"), _plane("x1", "x3-I*x4")]
    elif family is F_.TwoA3TwoA1ThreePlanes:
        pts = FOUR_POINTS
        planes = [LinearSubspace.span([pts[1], pts[2], pts[3]]),
                  LinearSubspace.span([pts[0], pts[2], pts[3]]), _plane("x4", "x5")]
    elif family is F_.EightA1:
        if _exact_sqrt(-p["a1"]) is None:
            raise FamilyError("EightA1 planes pass through [1:0:0:0:+-sqrt(-a1)]: "
                              "exact planes need a1 to be a rational square")
        planes = [pl for pl, _ in planes_through_nodes(f, eight_a1_points(p["variant"], p["a1"]))]
    else:
        raise FamilyError(f"no plane catalog for {family.value}")
    return [pl for pl in planes if pl is not None and contains_subspace(f, pl)]


def _radical_planes(a, b4):
    """The planes {x3 = 2x4 + (b4 +- sqrt(b4^2-4a)) x5 = 0}, when the root is rational/imaginary."""
    d = b4 * b4 - 4 * a
    root = _exact_sqrt(d)
    if root is None:
        return [None, None]  # irrational: real planes, but not representable here
    return [_plane_coeffs([0, 0, 1, 0, 0], [0, 0, 0, 2, b4 + s * root]) for s in (1, -1)]


def _plane_coeffs(*rows):
    return LinearSubspace("Plane", tuple(tuple(r) for r in rows))


def _exact_sqrt(d):
    """sqrt(d) in Q or i*Q, else None."""
    from math import isqrt

    mag = abs(d)
    n, m = mag.numerator, mag.denominator
    rn, rm = isqrt(n), isqrt(m)
    if rn * rn != n or rm * rm != m:
        return None
    r = Fraction(rn, rm)
    return r if d >= 0 else GaussRat(0, r)


def planes_through_nodes(f, points):
    """Planes of X spanned by 4 coplanar singular points, with their point sets."""
    out = []
    for quad in combinations(range(len(points)), 4):
        rows = [list(points[i].coords) for i in quad]
        if rank(rows) != 3:
            continue
        plane = LinearSubspace.span([points[i] for i in quad[:3]])
        if contains_subspace(f, plane) and all(pl != plane for pl, _ in out):
            members = frozenset(i for i, pt in enumerate(points) if plane.contains_point(pt))
            out.append((plane, members))
    return out


@dataclass
class PlaneCount:
    count: int
    planes: list = field(default_factory=list)


def real_planes_in_x3_section(family, params=None):
    """Number of real planes of X among the catalog planes, and the planes."""
    family = family if isinstance(family, FamilyId) else FamilyId.parse(family)
    p = normalize_params(family, params)
    if family is F_.TwoD4TwoA1:
        # The radical planes are real exactly when b4^2 - 4a > 0, even if the
        # square root is irrational (and so not representable exactly).
        base = [pl for pl in catalog_planes(family, p) if pl.is_real()]
        if p["b4"] ** 2 - 4 * p["a"] > 0 and _exact_sqrt(p["b4"] ** 2 - 4 * p["a"]) is None:
            return PlaneCount(len(base) + 2, base)
        return PlaneCount(len(base), base)
    planes = [pl for pl in catalog_planes(family, p) if pl.is_real()]
    return PlaneCount(len(planes), planes)


# -- discriminants -------------------------------------------------------------

def _up(*coeffs):
    """UPoly from coefficients given highest degree first (as printed)."""
    return UPoly(reversed([Fraction(c) for c in coeffs]))


def d1_poly(t):
    t1, t2, t3, t4, t5, t6 = (t[f"t{k}"] for k in range(1, 7))
    return _up(-1, t5 - t4, t4 * t5 - t2 - t6 ** 2 / 4, t2 * t5 - t1 - t3 * t6 / 2, t1 * t5 - t3 ** 2 / 4)


def d2_poly(t):
    t1, t2, t3, t4, t5, t6 = (t[f"t{k}"] for k in range(1, 7))
    return _up(1, t4 + t5, t2 + t4 * t5 - t6 ** 2 / 4, t1 + t2 * t5 - t3 * t6 / 2, t1 * t5 - t3 ** 2 / 4)


def delta_2a3_2a1(p):
    a, b1, b2, b3, b4, t2, t6 = (p[k] for k in ("a", "b1", "b2", "b3", "b4", "t2", "t6"))
    if t6 == 0:
        raise FamilyError("t6 must be nonzero")
    return _up(-(b1 ** 2 + b2 ** 2) / 4, (-2 * t2 * t6 * (b1 + b2) - b3 ** 2 + 4 * a * t6) / (4 * t6),
               b4 - t2 ** 2 / 2, t6)


def delta1(a, t1, t2, t3):
    return _up(1, t1, a - 4, -(4 * t1 + t2 * t3), -4 * a + t2 ** 2 + t3 ** 2)


def delta1_triple(p):
    a, a1, a2, a3 = p["a"], p["a1"], p["a2"], p["a3"]
    return (delta1(a, a1, a2, a3), delta1(a, a2, a1, a3), delta1(a, a3, a2, a1))


def delta2(p):
    a, a1, a2, a3 = p["a"], p["a1"], p["a2"], p["a3"]
    return _up(a2 ** 2 / 4, -(a + a2 ** 2 + a3 ** 2), 4 * a - a1, 4 * a1 - 1, 4)


def conic_delta(p):
    a = [None] + [p[f"a{k}"] for k in range(1, 14)]
    s7, s6, s5 = a[7] + a[10], a[6] + a[9], a[5] + a[8]
    return _up(-(s7 ** 2 + a[13] ** 2),
               4 * a[4] - 2 * s6 * s7 - 2 * a[12] * a[13],
               4 * a[2] - 2 * s5 * s7 - s6 ** 2 - 2 * a[11] * a[13] - a[12] ** 2,
               4 * a[3] - 2 * s5 * s6 - 2 * a[11] * a[12],
               4 * a[1] - s5 ** 2 - a[11] ** 2)


def conic_delta_derived(p):
    """4c - q1^2 - q2^2 - q3^2 at x4 = 1, x5 = x (square completion of the normal form)."""
    a = [None] + [p[f"a{k}"] for k in range(1, 14)]
    c = UPoly([4 * a[1], 4 * a[3], 4 * a[2], 4 * a[4]])
    out = c
    for lo in (5, 8, 11):
        q = UPoly([a[lo], a[lo + 1], a[lo + 2]])
        out = out - q * q
    return out


DISCRIMINANTS = {
    F_.TwoD4MinusQ: d1_poly,
    F_.TwoD4PlusQ: d2_poly,
    F_.TwoA3TwoA1ThreePlanes: delta_2a3_2a1,
    F_.SixA1ThreeRealPlanes: delta1_triple,
    F_.SixA1OneRealPlane: delta2,
    F_.ConicLocus: conic_delta,
}


def discriminant_polynomial(family, params):
    """The printed discriminant (a triple of quartics for three real planes)."""
    family = family if isinstance(family, FamilyId) else FamilyId.parse(family)
    if family not in DISCRIMINANTS:
        raise FamilyError(f"{family.value} has no catalog discriminant: use bundles module")
    return DISCRIMINANTS[family](normalize_params(family, params))


def nongeneric_discriminants(family, params):
    """Discriminant instances with a repeated factor (empty when generic or not applicable).

    A repeated root of the bundle discriminant is where extra singular points
    of X (beyond the declared ones) appear, so a squarefree discriminant is
    the genericity condition for the discriminant-bearing families. The
    conic-locus family is tested with the square-completed quartic.
    """
    from .exact.upoly import is_squarefree

    family = family if isinstance(family, FamilyId) else FamilyId.parse(family)
    if family not in DISCRIMINANTS:
        return []
    p = normalize_params(family, params)
    d = conic_delta_derived(p) if family is F_.ConicLocus else DISCRIMINANTS[family](p)
    ds = d if isinstance(d, tuple) else (d,)
    return [k for k, x in enumerate(ds) if x.is_zero() or (x.degree > 0 and not is_squarefree(x))]


# Projection plane (first equation = chart coordinate, second = base variable)
# used for each quadric-bundle family.
BUNDLE_PLANES = {
    F_.TwoD4MinusQ: ("x3", "x4"),
    F_.TwoD4PlusQ: ("x3", "x4"),
    F_.TwoA3TwoA1ThreePlanes: ("x4", "x5"),
    F_.SixA1ThreeRealPlanes: ("x1", "x2"),
    F_.SixA1OneRealPlane: ("x2", "x1"),
    F_.ConicLocus: ("x4", "x5"),
    F_.TwoD4TwoA1: ("x3", "x5"),
}


def bundle_plane(family):
    family = family if isinstance(family, FamilyId) else FamilyId.parse(family)
    if family not in BUNDLE_PLANES:
        raise FamilyError(f"{family.value} has no catalog quadric-bundle projection")
    return _plane(*BUNDLE_PLANES[family])
