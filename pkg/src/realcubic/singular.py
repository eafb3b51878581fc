"""Singular points of cubic forms and their ADE types over Q(i)."""

from dataclasses import dataclass
from fractions import Fraction

from .exact.gaussrat import GaussRat, simplify
from .exact.linalg import nullspace, rank
from .exact.multipoly import MultiPoly

DEFAULT_CAP = 8


class ProjPoint:
    """A point of P^4 with Q(i) coordinates, compared up to scaling."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = tuple(GaussRat.coerce(c) if not isinstance(c, GaussRat) else c for c in coords)
        if not any(coords):
            raise ValueError("the zero vector is not a projective point")
        k = next(i for i, c in enumerate(coords) if c)
        lead = coords[k]
        self.coords = tuple(c / lead for c in coords)

    @classmethod
    def parse(cls, text):
        """Read ``"[1:i:0:0:0]"`` / ``"1,-I,0,0,1/2"`` style coordinates."""
        from .exact.multipoly import parse_poly

        parts = text.strip().strip("[]").replace(":", ",").split(",")
        vals = []
        for part in parts:
            c = parse_poly(part.strip().replace("i", "I"), ("_",))
            vals.append(c.coeff((0,)))
        return cls(vals)

    @property
    def pivot(self):
        return next(i for i, c in enumerate(self.coords) if c)

    def is_real(self):
        return all(c.im == 0 for c in self.coords)

    def conj(self):
        return ProjPoint([c.conj() for c in self.coords])

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __repr__(self):
        return "[" + ":".join(_fmt(c) for c in self.coords) + "]"


def _fmt(c):
    c = simplify(c)
    if isinstance(c, GaussRat):
        if c.re == 0:
            return "i" if c.im == 1 else ("-i" if c.im == -1 else f"{c.im}i")
        return str(c)
    return str(c)


@dataclass(frozen=True)
class SingularityType:
    """ADE label: ``tag`` is one of A, D4, Smooth, Corank2Other, BeyondCap."""

    tag: str
    n: int = 0

    def __str__(self):
        return f"A{self.n}" if self.tag == "A" else self.tag

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if text.startswith("A") and text[1:].isdigit():
            return cls("A", int(text[1:]))
        if text in ("D4", "Smooth", "Corank2Other", "BeyondCap"):
            return cls(text)
        raise ValueError(f"unknown singularity type {text!r}")


def A(n):
    if n < 1:
        raise ValueError("A_n needs n >= 1")
    return SingularityType("A", n)


D4 = SingularityType("D4")
SMOOTH = SingularityType("Smooth")
CORANK2_OTHER = SingularityType("Corank2Other")
BEYOND_CAP = SingularityType("BeyondCap")


def is_singular_at(f, p):
    """F(p) = 0 and all five partial derivatives vanish at p."""
    pt = list(p.coords)
    if f.evaluate(pt) != 0:
        return False
    return all(g.evaluate(pt) == 0 for g in f.gradient())


def is_cone(f):
    """True when the partial derivatives are linearly dependent (F is a cone)."""
    grads = f.gradient()
    monos = sorted({e for g in grads for e in g.terms})
    rows = [[g.coeff(e) for e in monos] for g in grads]
    return rank(rows) < len(grads)


def node_over_quadratic(f, coords, modulus):
    """Singular / nodal test at a point over the field Q[s]/(modulus).

    ``coords`` are five UPolys in s (the point), ``modulus`` an irreducible
    rational quadratic. Returns ``(singular, node)``; the point is a node
    (A1) iff the 5x5 Hessian of F has rank 4 there, i.e. some 4x4 minor is
    nonzero modulo ``modulus``.
    """
    from itertools import combinations

    from .exact.linalg import poly_det
    from .exact.upoly import UPoly

    if modulus.degree != 2:
        raise ValueError("modulus must be quadratic")

    def at_point(g):
        out = UPoly()
        for e, c in g.terms.items():
            term = UPoly.const(c)
            for x, k in zip(coords, e):
                if k:
                    term = (term * x ** k) % modulus
            out = out + term
        return out % modulus

    if not at_point(f).is_zero() or any(not at_point(g).is_zero() for g in f.gradient()):
        return False, False
    grads = f.gradient()
    hess = [[at_point(g.diff(j)) for j in range(5)] for g in grads]
    for rows in combinations(range(5), 4):
        for cols in combinations(range(5), 4):
            minor = poly_det([[hess[i][j] for j in cols] for i in rows]) % modulus
            if not minor.is_zero():
                return True, True
    return True, False


LOCAL_VARS = ("y1", "y2", "y3", "y4")


def local_expansion(f, p):
    """Affine germ of F at p in four local coordinates (p moved to the origin)."""
    k = p.pivot
    ys = MultiPoly.gens(LOCAL_VARS)
    images, j = [], 0
    for i, c in enumerate(p.coords):
        if i == k:
            images.append(MultiPoly.const(LOCAL_VARS, 1))
        else:
            images.append(ys[j] + c)
            j += 1
    return f.substitute(images, LOCAL_VARS)


def _hessian_of(germ):
    n = germ.nvars
    h = [[Fraction(0)] * n for _ in range(n)]
    for e, c in germ.homogeneous_part(2).terms.items():
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        i, j = idx
        if i == j:
            h[i][i] = 2 * c
        else:
            h[i][j] = c
            h[j][i] = c
    return h


def _require_singular(f, p):
    if not is_singular_at(f, p):
        raise ValueError(f"{p} is not a singular point")


def hessian_corank(f, p):
    """Corank of the Hessian of the local germ of F at the singular point p."""
    _require_singular(f, p)
    return 4 - rank(_hessian_of(local_expansion(f, p)))


def _binary_cubic_discriminant(a, b, c, d):
    # a u^3 + b u^2 v + c u v^2 + d v^3
    return b * b * c * c - 4 * a * c ** 3 - 4 * b ** 3 * d - 27 * a * a * d * d + 18 * a * b * c * d


def _adapted_coordinates(germ, kernel):
    """Re-express the germ in (z..., w...) with w spanning the Hessian kernel."""
    n = germ.nvars
    pivots = []
    for v in kernel:
        pivots.append(next(i for i, c in enumerate(v) if c and i not in pivots))
    complement = [i for i in range(n) if i not in pivots]
    names = tuple(f"z{k}" for k in range(len(complement))) + tuple(f"w{k}" for k in range(len(kernel)))
    gens = MultiPoly.gens(names)
    zs, ws = gens[: len(complement)], gens[len(complement):]
    images = []
    for i in range(n):
        img = MultiPoly(names)
        if i in complement:
            img = img + zs[complement.index(i)]
        for v, w in zip(kernel, ws):
            if v[i]:
                img = img + w * v[i]
        images.append(img)
    return germ.substitute(images, names), len(complement)


def _series_mul(a, b, order):
    out = [0] * (order + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(order + 1 - i):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


def _series_compose(poly, series, order):
    """Substitute univariate truncated series for each variable of ``poly``."""
    powers = [{1: s} for s in series]

    def power(i, k):
        if k not in powers[i]:
            powers[i][k] = _series_mul(power(i, k - 1), series[i], order)
        return powers[i][k]

    out = [0] * (order + 1)
    for e, c in poly.terms.items():
        term = [c] + [0] * order
        for i, k in enumerate(e):
            if k:
                term = _series_mul(term, power(i, k), order)
        out = [x + y for x, y in zip(out, term)]
    return out


def _residual_series(g, r, order):
    """g(phi(w), w) where phi solves dg/dz = 0 (splitting lemma), corank 1."""
    nz = r
    grads = [g.diff(j) for j in range(nz)]
    hzz = [[grads[j].diff(l).coeff((0,) * g.nvars) for l in range(nz)] for j in range(nz)]
    inv = _invert(hzz)
    higher = [gj - gj.homogeneous_part(1) for gj in grads]
    w_series = [Fraction(0), Fraction(1)] + [Fraction(0)] * (order - 1)
    phi = [[Fraction(0)] * (order + 1) for _ in range(nz)]
    # each pass fixes at least one more order of phi
    for _ in range(order + 1):
        rvals = [_series_compose(hj, phi + [w_series], order) for hj in higher]
        new = [[-sum((inv[j][l] * rvals[l][k] for l in range(nz)), Fraction(0)) for k in range(order + 1)]
               for j in range(nz)]
        if new == phi:
            break
        phi = new
    return _series_compose(g, phi + [w_series], order)


def _invert(m):
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    from .exact.linalg import row_reduce

    rref, piv = row_reduce(aug)
    if piv[:n] != list(range(n)):
        raise ValueError("singular block")
    return [row[n:] for row in rref]


def ade_type(f, p, cap=DEFAULT_CAP):
    """ADE type of the isolated singularity of F at p, up to A_cap and D4."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    _require_singular(f, p)
    germ = local_expansion(f, p)
    h = _hessian_of(germ)
    kernel = nullspace(h)
    corank = len(kernel)
    if corank == 0:
        return A(1)
    if corank >= 3:
        return CORANK2_OTHER
    g, r = _adapted_coordinates(germ, kernel)
    if corank == 2:
        cub = g.homogeneous_part(3)
        nv = g.nvars
        def c(i, j):
            e = [0] * nv
            e[nv - 2], e[nv - 1] = i, j
            return cub.coeff(tuple(e))
        disc = _binary_cubic_discriminant(c(3, 0), c(2, 1), c(1, 2), c(0, 3))
        return D4 if disc != 0 else CORANK2_OTHER
    order = cap + 2
    series = _residual_series(g, r, order)
    k = next((k for k, c in enumerate(series) if c), None)
    if k is None or k - 1 > cap:
        return BEYOND_CAP
    return A(k - 1)


def conjugation_permutation(points):
    """Permutation induced by complex conjugation, plus the indices of real points."""
    points = list(points)
    index = {p: i for i, p in enumerate(points)}
    perm = []
    for p in points:
        q = p.conj()
        if q not in index:
            raise ValueError(f"point set is not closed under conjugation: orphan {p}")
        perm.append(index[q])
    real = [i for i, j in enumerate(perm) if i == j]
    return perm, real


def cycles(perm):
    """Nontrivial cycles of a permutation given as a list (0-based)."""
    seen, out = set(), []
    for i in range(len(perm)):
        if i in seen:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = perm[j]
        if len(cyc) > 1:
            out.append(tuple(cyc))
    return out


# -- real singular points ------------------------------------------------------

def _compile(poly):
    import numpy as np

    if not poly.terms:
        return np.zeros((0, poly.nvars), dtype=int), np.zeros(0)
    exps = np.array(list(poly.terms.keys()), dtype=int)
    coeffs = np.array([float(c) for c in poly.terms.values()])
    return exps, coeffs


def _eval_many(compiled, pts):
    import numpy as np

    exps, coeffs = compiled
    if not len(coeffs):
        return np.zeros(len(pts))
    mons = np.prod(pts[:, None, :] ** exps[None, :, :], axis=2)
    return mons @ coeffs


def _rationalize(x, bound):
    k = max(range(len(x)), key=lambda i: abs(x[i]))
    y = [v / x[k] for v in x]
    return ProjPoint([Fraction(v).limit_denominator(bound) for v in y])


@dataclass
class RealSingularSearch:
    """Certified real singular points plus unconfirmed numeric near-hits."""

    points: list
    numeric_only: list
    starts: int


def find_real_singular_points(f, starts=48, iterations=60, seed=0, tol=1e-9):
    """Search X(R) for singular points: batched damped Gauss-Newton on grad F = 0, |x| = 1.

    Every reported point is confirmed exactly (rational coordinates, exact
    gradient). Numeric critical points that do not rationalize are returned in
    ``numeric_only``; absence of hits is evidence, not proof.
    """
    import numpy as np

    if not f.is_real():
        raise ValueError("need a real cubic")
    n = f.nvars
    grads = f.gradient()
    g_c = [_compile(g) for g in grads]
    f_c = _compile(f)
    h_c = [[_compile(grads[i].diff(j)) for j in range(n)] for i in range(n)]
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((starts, n))
    x[: min(n, starts)] = np.eye(n)[: min(n, starts)] + 0.01 * rng.standard_normal((min(n, starts), n))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    lam = 1e-6
    for _ in range(iterations):
        r = np.stack([_eval_many(c, x) for c in g_c] + [np.sum(x * x, axis=1) - 1], axis=1)
        jac = np.empty((starts, n + 1, n))
        for i in range(n):
            for j in range(n):
                jac[:, i, j] = _eval_many(h_c[i][j], x)
        jac[:, n, :] = 2 * x
        jt = np.transpose(jac, (0, 2, 1))
        a = jt @ jac + lam * np.eye(n)
        step = np.linalg.solve(a, (jt @ r[:, :, None]))[:, :, 0]
        x = x - step
        x /= np.linalg.norm(x, axis=1, keepdims=True)
    res = np.stack([_eval_many(c, x) for c in g_c], axis=1)
    scale = max(1.0, max((float(np.max(np.abs(c[1]))) for c in g_c if len(c[1])), default=1.0))
    found, numeric = [], []
    for xi, ri in zip(x, res):
        if np.linalg.norm(ri) > tol * scale:
            continue
        if abs(float(_eval_many(f_c, xi[None, :])[0])) > tol * scale:
            continue
        confirmed = None
        for bound in (10, 100, 10 ** 4, 10 ** 6):
            p = _rationalize(list(xi), bound)
            if is_singular_at(f, p):
                confirmed = p
                break
        if confirmed is not None:
            if confirmed not in found:
                found.append(confirmed)
        elif not any(np.allclose(xi, y) or np.allclose(xi, -y) for y in numeric):
            numeric.append(xi)
    return RealSingularSearch(found, [list(map(float, v)) for v in numeric], starts)
