"""Conic and quadric-surface bundle models, and exact component counting.

Projecting X from a plane Pi in X gives a quadric surface bundle over P^1.
Its fibre over a base point is a quadric in P^3 whose Gram matrix has
entries polynomial in the base coordinate; the real fibre type only changes
at real roots of the determinant. Walking once around the circle P^1(R)
and recording which arcs (and boundary points) carry nonempty fibres gives
the number of connected components of the image, hence of X(R).
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .exact.linalg import charpoly_coeffs, diagonalize_symmetric, row_reduce, signature_at
from .exact.multipoly import X5, MultiPoly
from .exact.roots import cauchy_bound, isolate_real_roots
from .exact.upoly import UPoly, square_class_part
from .families import contains_subspace


class BundleError(ValueError):
    pass


# -- conic bundles -------------------------------------------------------------

CONIC_VARS = ("y1", "y2", "x3", "x4", "x5")


@dataclass
class ConicBundleModel:
    """Y: y1^2 + y2^2 + L*f3 - (q1^2+q2^2)/4 = 0 over P^2(x3,x4,x5); image {G >= 0}."""

    Y_equation: MultiPoly
    region_poly: MultiPoly
    q1: MultiPoly
    q2: MultiPoly
    f3: MultiPoly
    lin: MultiPoly


def _only_base(poly, what):
    bad = poly.support_vars() & {"x1", "x2"}
    if bad:
        raise BundleError(f"{what} must not involve {sorted(bad)}")


def conic_bundle_model(q1, q2, f3, lin=None):
    """Conic bundle of L*(x1^2+x2^2) + x1*q1 + x2*q2 + f3 (L defaults to x3)."""
    if lin is None:
        lin = MultiPoly.var(X5, "x3")
    for poly, what in ((q1, "q1"), (q2, "q2"), (f3, "f3"), (lin, "the linear factor")):
        _only_base(poly, what)
    if not (q1.is_homogeneous(2) and q2.is_homogeneous(2) and f3.is_homogeneous(3) and lin.is_homogeneous(1)):
        raise BundleError("need quadratic q1, q2, cubic f3 and linear L")
    g = (q1 * q1 + q2 * q2) * Fraction(1, 4) - lin * f3
    # re-express in (y1, y2, x3, x4, x5)
    keep = [2, 3, 4]
    base = MultiPoly(CONIC_VARS, {(0, 0) + tuple(e[k] for k in keep): c for e, c in g.terms.items()})
    y1, y2 = MultiPoly.var(CONIC_VARS, "y1"), MultiPoly.var(CONIC_VARS, "y2")
    return ConicBundleModel(y1 * y1 + y2 * y2 - base, g, q1, q2, f3, lin)


def conic_bundle_from_cubic(f):
    """Read off L, q1, q2, f3 from F = L(x1^2+x2^2) + x1 q1 + x2 q2 + f3."""
    parts = {}
    for e, c in f.terms.items():
        key = (e[0], e[1])
        rest = (0, 0) + e[2:]
        parts.setdefault(key, {})[rest] = c
    if not set(parts) <= {(2, 0), (0, 2), (1, 0), (0, 1), (0, 0)}:
        raise BundleError("cubic is not of the form L(x1^2+x2^2) + x1 q1 + x2 q2 + f3")
    mk = lambda k: MultiPoly(X5, parts.get(k, {}))
    if mk((2, 0)) != mk((0, 2)):
        raise BundleError("x1^2 and x2^2 coefficients differ")
    return conic_bundle_model(mk((1, 0)), mk((0, 1)), mk((0, 0)), mk((2, 0)))


# -- quadric bundles -----------------------------------------------------------

FIBRE_VARS = ("m1", "m2", "m3", "w", "x")


@dataclass
class BundleGram:
    """Gram matrices of the fibre quadric in both affine charts of the base.

    ``matrix`` uses the base coordinate x = l2/l1 (chart l1 = 1), and
    ``matrix_inf`` uses s = l1/l2 (chart l2 = 1). Entries are UPoly.
    """

    matrix: list
    matrix_inf: list
    plane: object
    complement: tuple = ()

    def swapped(self):
        return BundleGram(self.matrix_inf, self.matrix, self.plane, self.complement)

    def det(self):
        c = charpoly_coeffs(self.matrix)
        return c[0]

    def diagonalize(self):
        return diagonalize_symmetric(self.matrix)

    def evaluate(self, x, chart=0):
        m = self.matrix if chart == 0 else self.matrix_inf
        return [[e(Fraction(x)) for e in row] for row in m]


def _gram_from_quadratic(g):
    """4x4 UPoly Gram of a quadratic form in m1,m2,m3,w with coefficients in x."""
    out = [[{} for _ in range(4)] for _ in range(4)]
    for e, c in g.terms.items():
        if sum(e[:4]) != 2:
            raise BundleError("fibre form is not quadratic; plane not in X?")
        idx = [i for i in range(4) for _ in range(e[i])]
        i, j = idx
        k = e[4]
        if i == j:
            out[i][i][k] = out[i][i].get(k, 0) + c
        else:
            out[i][j][k] = out[i][j].get(k, 0) + c / 2
            out[j][i][k] = out[j][i].get(k, 0) + c / 2
    mat = []
    for i in range(4):
        row = []
        for j in range(4):
            d = out[i][j]
            row.append(UPoly([d.get(k, 0) for k in range(max(d, default=-1) + 1)]))
        mat.append(row)
    return mat


def _fibre_form(f, plane, chart):
    eqs = plane.equations
    if any(not isinstance(c, Fraction) for e in eqs for c in e) or not f.is_real():
        raise BundleError("need a real cubic and a real plane")
    _, piv = row_reduce(eqs)
    comp = [k for k in range(5) if k not in piv]
    # solve E_J x_J = (u, v) - E_K m for x_J
    j1, j2 = piv
    a, b = eqs[0][j1], eqs[0][j2]
    c, d = eqs[1][j1], eqs[1][j2]
    det = a * d - b * c
    gens = MultiPoly.gens(FIBRE_VARS)
    m = gens[:3]
    w, x = gens[3], gens[4]
    if chart == 0:
        u, v = w, x * w
    else:
        u, v = x * w, w
    r1 = u - sum((mi * eqs[0][k] for mi, k in zip(m, comp)), MultiPoly(FIBRE_VARS))
    r2 = v - sum((mi * eqs[1][k] for mi, k in zip(m, comp)), MultiPoly(FIBRE_VARS))
    images = [None] * 5
    images[j1] = (r1 * d - r2 * b) * (1 / det)
    images[j2] = (r2 * a - r1 * c) * (1 / det)
    for mi, k in zip(m, comp):
        images[k] = mi
    g = f.substitute(images, FIBRE_VARS)
    terms = {}
    for e, coef in g.terms.items():
        if e[3] == 0:
            raise BundleError("plane is not contained in X")
        terms[e[:3] + (e[3] - 1, e[4])] = coef
    return MultiPoly(FIBRE_VARS, terms), tuple(comp)


def quadric_bundle_gram(f, plane):
    """Gram matrices of the quadric surface bundle obtained by projecting from ``plane``."""
    if plane.kind != "Plane":
        raise BundleError("projection centre must be a plane")
    if not contains_subspace(f, plane):
        raise BundleError(f"plane {plane} is not contained in X")
    g0, comp = _fibre_form(f, plane, 0)
    g1, _ = _fibre_form(f, plane, 1)
    return BundleGram(_gram_from_quadratic(g0), _gram_from_quadratic(g1), plane, comp)


# -- fibre types -----------------------------------------------------------------

class FiberType(Enum):
    Empty = "Empty"
    Point = "Point"
    Sphere = "Sphere"
    Cone = "Cone"
    Hyperboloid = "Hyperboloid"
    Degenerate = "Degenerate"

    @property
    def nonempty(self):
        return self is not FiberType.Empty


def fiber_type_from_signature(pos, neg, zero=0):
    rank = pos + neg
    if rank == 4:
        if pos == 0 or neg == 0:
            return FiberType.Empty
        return FiberType.Hyperboloid if pos == 2 else FiberType.Sphere
    if rank == 3:
        return FiberType.Point if (pos == 0 or neg == 0) else FiberType.Cone
    return FiberType.Degenerate


def classify_quadric_fiber(signs):
    """Real type of the diagonal quadric sum(sign_i * u_i^2) in P^3."""
    signs = list(signs)
    if len(signs) != 4 or any(s not in (-1, 0, 1) for s in signs):
        raise ValueError("need four signs in {-1, 0, 1}")
    return fiber_type_from_signature(signs.count(1), signs.count(-1), signs.count(0))


# -- arcs on the base circle -------------------------------------------------------

@dataclass
class Boundary:
    """A base point where the fibre degenerates; ``root`` None means the point at infinity."""

    root: object
    fiber: FiberType
    signature: tuple

    def __float__(self):
        return float("inf") if self.root is None else float(self.root)

    def label(self):
        return "inf" if self.root is None else f"{float(self.root):.9g}"


@dataclass
class Arc:
    sample: Fraction
    fiber: FiberType
    signature: tuple


@dataclass
class BaseArcDecomposition:
    """Alternating arcs and boundary points around P^1(R).

    ``arcs[i]`` runs from ``boundaries[i-1]`` to ``boundaries[i]`` (cyclically).
    """

    boundaries: list
    arcs: list
    boundary_cases: list = field(default_factory=list)

    def circular_sequence(self):
        seq = []
        for arc, b in zip(self.arcs, self.boundaries + [None] * (len(self.arcs) - len(self.boundaries))):
            seq.append(arc.fiber)
            if b is not None:
                seq.append(b.fiber)
        return seq


@dataclass
class ComponentCount:
    count: int
    decomposition: BaseArcDecomposition


def count_circular_runs(flags):
    """Number of maximal runs of True in a cyclic sequence."""
    flags = list(flags)
    if not flags or not any(flags):
        return 0
    if all(flags):
        return 1
    return sum(1 for i in range(len(flags)) if flags[i] and not flags[i - 1])


def _separate(r1, r2):
    """Refine two isolating intervals of distinct roots until they are disjoint."""
    while r1.hi >= r2.lo:
        if r1.width >= r2.width:
            r1 = r1.bisect()
        else:
            r2 = r2.bisect()
    return r1, r2


def _rational_signature(coeffs, x):
    return signature_at(coeffs, Fraction(x))


def decompose_base(gram, chart=0):
    """Exact arc decomposition of P^1(R) for the bundle ``gram``."""
    if chart == 1:
        gram = gram.swapped()
    coeffs = charpoly_coeffs(gram.matrix)
    det = coeffs[0]
    if det.is_zero():
        raise BundleError("non-catalog degeneration: fibre quadric is singular over the whole base")
    coeffs_inf = charpoly_coeffs(gram.matrix_inf)
    roots = isolate_real_roots(det) if det.degree > 0 else []
    for i in range(len(roots) - 1):
        roots[i], roots[i + 1] = _separate(roots[i], roots[i + 1])
    boundaries = []
    cases = []
    for r in roots:
        sig = signature_at(coeffs, r)
        b = Boundary(r, fiber_type_from_signature(*sig[:2]), sig)
        boundaries.append(b)
        if sig[0] + sig[1] <= 2:
            cases.append(b)
    sig_inf = _rational_signature(coeffs_inf, 0)
    inf_is_boundary = sig_inf[2] > 0
    big = cauchy_bound(det) + 1 if det.degree > 0 else Fraction(1)

    def arc_at(x):
        sig = _rational_signature(coeffs, x)
        return Arc(Fraction(x), fiber_type_from_signature(*sig[:2]), sig)

    arcs = []
    if inf_is_boundary:
        b_inf = Boundary(None, fiber_type_from_signature(*sig_inf[:2]), sig_inf)
        if sig_inf[0] + sig_inf[1] <= 2:
            cases.append(b_inf)
        if not roots:
            arcs = [arc_at(0)]
        else:
            arcs.append(arc_at(-big))  # from infinity to the first root
            for r1, r2 in zip(roots, roots[1:]):
                arcs.append(arc_at((r1.hi + r2.lo) / 2))
            arcs.append(arc_at(big))  # last root to infinity
        boundaries.append(b_inf)
    else:
        if not roots:
            arcs = [arc_at(0)]
        else:
            arcs.append(arc_at(big))  # through infinity, ending at the first root
            for r1, r2 in zip(roots, roots[1:]):
                arcs.append(arc_at((r1.hi + r2.lo) / 2))
    return BaseArcDecomposition(boundaries, arcs, cases)


def component_count_over_line(gram, chart=0):
    """Connected components of the set of base points with nonempty real fibre."""
    dec = decompose_base(gram, chart)
    return ComponentCount(count_circular_runs(f.nonempty for f in dec.circular_sequence()), dec)


def bundle_for(family, params):
    """Gram of the catalog projection of a quadric-bundle family."""
    from .families import build_cubic, bundle_plane

    return quadric_bundle_gram(build_cubic(family, params), bundle_plane(family))


# -- catalog discriminants against the Gram matrix ----------------------------------

# For three real planes, the permuted Delta_1 instances belong to the planes
# {x1 = x2 = 0}, {x1 = x3 = 0}, {x1 = x4 = 0} in that order.
THREE_PLANE_PROJECTIONS = (("x1", "x2"), ("x1", "x3"), ("x1", "x4"))


def gram_discriminant_class(gram):
    """Square class of the product of the diagonalized Gram entries.

    The diagonal product is det(M) * det(P)^2 for the congruence P, so only
    its class modulo squares is meaningful; it is returned as the monic
    product of odd-multiplicity factors.
    """
    return square_class_part(gram.diagonalize().product().squarefree_kernel())


@dataclass
class DiscriminantCheck:
    label: str
    catalog: UPoly
    gram: UPoly

    @property
    def agrees(self):
        return square_class_part(self.catalog) == self.gram


def check_catalog_discriminant(family, params, formula=None):
    """Compare a catalog discriminant with the Gram matrix of the catalog projection.

    ``formula`` overrides the catalog formula (a function of the parameter
    record). Returns one ``DiscriminantCheck`` per discriminant instance.
    """
    from .families import (
        F_, _plane, build_cubic, bundle_plane, discriminant_polynomial, normalize_params,
    )

    p = normalize_params(family, params)
    catalog = formula(p) if formula else discriminant_polynomial(family, p)
    f = build_cubic(family, p)
    if isinstance(catalog, tuple):
        if family is not F_.SixA1ThreeRealPlanes:
            raise BundleError(f"no projection list for the discriminants of {family.value}")
        planes = [_plane(*pl) for pl in THREE_PLANE_PROJECTIONS]
        labels = [f"{{{a}={b}=0}}" for a, b in THREE_PLANE_PROJECTIONS]
    else:
        catalog, planes, labels = (catalog,), [bundle_plane(family)], [family.value]
    return [DiscriminantCheck(lab, d, gram_discriminant_class(quadric_bundle_gram(f, pl)))
            for lab, d, pl in zip(labels, catalog, planes)]
