"""H^1(C_2, M) for integer lattices with an involution.

Lattices come from generator/relation presentations of class groups; the
involution is complex conjugation. Everything is plain integer linear algebra
built on a Smith normal form.

Matrices are lists of integer rows. A lattice involution ``sigma`` acts on
column vectors: column j of ``sigma`` is the image of basis vector j.
"""

from dataclasses import dataclass, field
from fractions import Fraction


# -- Smith normal form --------------------------------------------------------

def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(a):
    """Return (D, U, V) with U*A*V = D diagonal, U and V unimodular.

    The nonzero diagonal entries are positive and each divides the next.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(map(int, row)) for row in a]
    u, v = _identity(m), _identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k*row_src
        d[dst] = [x + k * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):  # col_dst += k*col_src
        for row in d:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
            if not entries:
                return d, u, v
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            p = d[t][t]
            done = True
            for i in range(t + 1, m):
                q = d[i][t] // p
                if q:
                    add_row(i, t, -q)
                if d[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = d[t][j] // p
                if q:
                    add_col(j, t, -q)
                if d[t][j]:
                    done = False
            if not done:
                continue
            # divisibility: the pivot must divide the remaining block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return d, u, v


def elementary_divisors(a):
    d, _, _ = smith_normal_form(a)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i]]


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def _transpose(a):
    return [list(r) for r in zip(*a)]


def integer_kernel(a, ncols=None):
    """Basis (as columns of the returned n x k matrix) of {x in Z^n : A x = 0}."""
    n = ncols if ncols is not None else len(a[0])
    if not a:
        return _identity(n)
    d, _, v = smith_normal_form(a)
    r = sum(1 for i in range(min(len(d), n)) if d[i][i])
    return [row[r:] for row in v]


def _solve_integer(basis_cols, targets_cols):
    """Integer X with B X = T, for B with saturated independent columns."""
    from .exact.linalg import solve

    n = len(basis_cols)
    k = len(basis_cols[0]) if n else 0
    rows = [[Fraction(x) for x in row] for row in basis_cols]
    out = []
    for j in range(len(targets_cols[0]) if targets_cols and targets_cols[0] else 0):
        sol = solve(rows, [Fraction(targets_cols[i][j]) for i in range(n)])
        if sol is None or any(x.denominator != 1 for x in sol):
            raise ValueError("image is not contained in the kernel lattice")
        out.append([int(x) for x in sol])
    return _transpose(out) if out else [[] for _ in range(k)]


# -- types ------------------------------------------------------------------------

@dataclass
class FiniteAbelianGroup:
    """Z/d1 + ... + Z/dk with d1 | d2 | ... ; empty means trivial."""

    divisors: tuple = ()

    def __post_init__(self):
        self.divisors = tuple(int(d) for d in self.divisors if d != 1)
        if any(d < 2 for d in self.divisors):
            raise ValueError("elementary divisors must be >= 2")
        if any(b % a for a, b in zip(self.divisors, self.divisors[1:])):
            raise ValueError("elementary divisors must form a divisibility chain")

    @property
    def order(self):
        out = 1
        for d in self.divisors:
            out *= d
        return out

    def is_trivial(self):
        return not self.divisors

    def __str__(self):
        if not self.divisors:
            return "0"
        return " + ".join(f"Z/{d}" for d in self.divisors)


@dataclass
class GaloisLattice:
    rank: int
    sigma: list

    def __post_init__(self):
        if len(self.sigma) != self.rank or any(len(r) != self.rank for r in self.sigma):
            raise ValueError("sigma must be rank x rank")
        if _matmul(self.sigma, self.sigma) != _identity(self.rank):
            raise ValueError("sigma is not an involution")

    def conjugate(self, p, p_inv):
        """The same module in the basis given by the columns of the unimodular ``p``."""
        return GaloisLattice(self.rank, _matmul(_matmul(p_inv, self.sigma), p))


@dataclass
class LatticePresentation:
    """Z^n modulo the row span of ``relations``; ``involution`` permutes/acts on generators.

    ``involution`` acts on column vectors (column j = image of generator j).
    """

    n_generators: int
    relations: list
    involution: list
    labels: tuple = field(default=())


class PresentationError(ValueError):
    pass


def lattice_from_presentation(p):
    """Torsion-free quotient Z^n / <relations> with the induced involution."""
    n = p.n_generators
    rels = [list(map(int, r)) for r in p.relations]
    if rels:
        d, _, v = smith_normal_form(rels)
        r = sum(1 for i in range(min(len(d), n)) if d[i][i])
        if any(d[i][i] > 1 for i in range(r)):
            raise PresentationError("quotient has torsion")
    else:
        v, r = _identity(n), 0
    # U R V = D  =>  the relation vectors span V^{-T} (d_i e_i); use y = V^T x
    w = _transpose(v)
    w_inv = _integer_inverse(w)
    s = [list(map(int, row)) for row in p.involution]
    if len(s) != n or any(len(row) != n for row in s):
        raise PresentationError("involution must be n x n")
    t = _matmul(_matmul(w, s), w_inv)
    if any(t[i][j] for i in range(r, n) for j in range(r)):
        raise PresentationError("involution does not preserve the relations")
    sigma = [row[r:] for row in t[r:]]
    return GaloisLattice(n - r, sigma)


def _integer_inverse(m):
    from .exact.linalg import row_reduce

    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    rref, piv = row_reduce(aug)
    inv = [row[n:] for row in rref]
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


def _h1_parts(lattice):
    n = lattice.rank
    s = lattice.sigma
    plus = [[s[i][j] + (i == j) for j in range(n)] for i in range(n)]
    minus = [[(i == j) - s[i][j] for j in range(n)] for i in range(n)]
    ker = integer_kernel(plus, n) if n else []
    if not ker or not ker[0]:
        return FiniteAbelianGroup(), [], _transpose(minus) if n else []
    coords = _solve_integer(ker, minus)
    divs = elementary_divisors(_transpose(coords)) if coords and coords[0] else []
    if len(divs) < len(ker[0]):
        raise ValueError("image of (1 - sigma) has lower rank than ker(1 + sigma)")
    return FiniteAbelianGroup(tuple(divs)), _transpose(ker), _transpose(minus)


def h1_c2(lattice):
    """H^1(C_2, M) = ker(1 + sigma) / im(1 - sigma)."""
    return _h1_parts(lattice)[0]


def h1_report(lattice):
    """The group together with a Z-basis of ker(1 + sigma) and generators of im(1 - sigma)."""
    group, ker, im = _h1_parts(lattice)
    return {
        "group": str(group),
        "elementary_divisors": list(group.divisors),
        "rank": lattice.rank,
        "kernel_basis": [list(v) for v in ker],
        "image_generators": [list(v) for v in im if any(v)],
    }


# -- catalog ------------------------------------------------------------------------

def _perm_matrix(images, n):
    """Column convention: generator j maps to generator images[j]."""
    m = [[0] * n for _ in range(n)]
    for j, i in enumerate(images):
        m[i][j] = 1
    return m


# Plane/node incidences of the 8-node cubic (planes Pi_1..Pi_5, nodes 1..8).
EIGHT_A1_INCIDENCE = (
    frozenset({1, 2, 6, 8}),
    frozenset({1, 2, 5, 7}),
    frozenset({5, 6, 7, 8}),
    frozenset({3, 4, 5, 6}),
    frozenset({3, 4, 7, 8}),
)

EIGHT_A1_IOTA = {
    1: ((1, 2), (3, 4), (5, 6), (7, 8)),
    2: ((1, 2), (3, 4), (5, 7), (6, 8)),
    3: ((1, 2), (3, 4), (5, 8), (6, 7)),
}


def iota_map(cycles):
    out = {}
    for a, b in cycles:
        out[a], out[b] = b, a
    return out


def plane_action(node_perm, incidence=EIGHT_A1_INCIDENCE):
    """Induced permutation of planes (0-based) from a node permutation (dict on 1..8)."""
    out = []
    for pl in incidence:
        img = frozenset(node_perm.get(k, k) for k in pl)
        if img not in incidence:
            raise ValueError("permutation does not preserve the plane configuration")
        out.append(incidence.index(img))
    return out


def real_plane_indices(node_perm, incidence=EIGHT_A1_INCIDENCE):
    act = plane_action(node_perm, incidence)
    return [i for i, j in enumerate(act) if i == j]


def eight_a1_case_from_perm(node_perm):
    """Which of the three cases a conjugation pattern of the 8 nodes realises."""
    for case, cyc in EIGHT_A1_IOTA.items():
        if iota_map(cyc) == {k: node_perm.get(k, k) for k in range(1, 9) if node_perm.get(k, k) != k}:
            return case
    return None


def _presentation(case):
    if case == "TwoA5":
        # S, Sbar, F ; S + Sbar = 2F
        return LatticePresentation(3, [[1, 1, -2]], _perm_matrix([1, 0, 2], 3), ("S", "Sbar", "F"))
    if case in ("SixA1Swap", "SixA1Trivial"):
        images = [0, 2, 1] if case == "SixA1Swap" else [0, 1, 2]
        return LatticePresentation(3, [[2, -1, -1]], _perm_matrix(images, 3), ("H", "S1", "S2"))
    if case == "TwoD4TwoA1OnePlane":
        # Pi_1..Pi_5, F ; Pi1+Pi2+Pi4 = Pi3+Pi4+Pi5 = F ; Pi1<->Pi2, Pi3<->Pi5
        rels = [[1, 1, 0, 1, 0, -1], [0, 0, 1, 1, 1, -1]]
        return LatticePresentation(6, rels, _perm_matrix([1, 0, 4, 3, 2, 5], 6),
                                   ("Pi1", "Pi2", "Pi3", "Pi4", "Pi5", "F"))
    if case.startswith("EightA1Case"):
        k = int(case[len("EightA1Case"):])
        if k not in EIGHT_A1_IOTA:
            raise ValueError(f"unknown catalog case {case!r}")
        act = plane_action(iota_map(EIGHT_A1_IOTA[k]))
        # hyperplane relations read off the configuration: Pi1+Pi2+Pi3 = Pi3+Pi4+Pi5 = F
        rels = [[1, 1, 1, 0, 0, -1], [0, 0, 1, 1, 1, -1]]
        return LatticePresentation(6, rels, _perm_matrix(act + [5], 6),
                                   ("Pi1", "Pi2", "Pi3", "Pi4", "Pi5", "F"))
    raise ValueError(f"unknown catalog case {case!r}")


CATALOG_CASES = ("TwoA5", "SixA1Swap", "SixA1Trivial", "TwoD4TwoA1OnePlane",
                 "EightA1Case1", "EightA1Case2", "EightA1Case3")


def catalog_presentation(case):
    if case not in CATALOG_CASES:
        raise ValueError(f"unknown catalog case {case!r}")
    return _presentation(case)


def galois_module_catalog(case):
    """Class-group lattice with conjugation for a named catalog case."""
    return lattice_from_presentation(catalog_presentation(case))
