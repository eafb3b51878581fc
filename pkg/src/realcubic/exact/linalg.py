"""Exact linear algebra: fields Q / Q(i), and symmetric matrices over Q(x)."""

from dataclasses import dataclass
from fractions import Fraction

from .roots import sign_at_root
from .upoly import UPoly, gcd


class RatFunc:
    """Reduced quotient of two rational univariate polynomials (monic denominator)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, UPoly) else UPoly.const(num)
        den = UPoly.const(1) if den is None else (den if isinstance(den, UPoly) else UPoly.const(den))
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = UPoly(), UPoly.const(1)
            return
        g = gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        lead = den.lead
        self.num = num * (1 / lead)
        self.den = den * (1 / lead)

    @classmethod
    def coerce(cls, x):
        return x if isinstance(x, RatFunc) else cls(x)

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self):
        return self.den.degree == 0

    def __eq__(self, other):
        other = RatFunc.coerce(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __add__(self, other):
        other = RatFunc.coerce(other)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-RatFunc.coerce(other))

    def __rsub__(self, other):
        return RatFunc.coerce(other) - self

    def __mul__(self, other):
        other = RatFunc.coerce(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RatFunc.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) / self

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("pole")
        return self.num(x) / d

    def sign_at(self, x):
        v = self(Fraction(x))
        return (v > 0) - (v < 0)

    def sign_at_root(self, r):
        """Sign at an algebraic number; ``None`` at a pole."""
        sd = sign_at_root(self.den, r)
        if sd == 0:
            return None
        return sign_at_root(self.num, r) * sd

    def squarefree_kernel(self):
        """num*den: same sign pattern and same squarefree part class as num/den."""
        return self.num * self.den

    def __repr__(self):
        if self.is_polynomial():
            return f"RatFunc({self.num})"
        return f"RatFunc(({self.num}) / ({self.den}))"


# -- field linear algebra (Fraction or GaussRat entries) -------------------

def row_reduce(rows):
    """Reduced row echelon form over the coefficient field; returns (rref, pivots)."""
    a = [list(r) for r in rows]
    if not a:
        return a, []
    m, n = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c] if not isinstance(a[r][c], int) else Fraction(1, a[r][c])
        a[r] = [v * inv for v in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a, pivots


def rank(rows):
    return len(row_reduce(rows)[1])


def nullspace(rows, ncols=None):
    """Basis of {v : rows . v = 0} over the coefficient field."""
    if not rows:
        n = ncols
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    n = len(rows[0])
    rref, piv = row_reduce(rows)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(piv):
            v[c] = -rref[i][f]
        basis.append(v)
    return basis


def solve(rows, rhs):
    """One solution of rows . v = rhs, or None when inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    n = len(rows[0])
    rref, piv = row_reduce(aug)
    if n in piv:
        return None
    v = [Fraction(0)] * n
    for i, c in enumerate(piv):
        v[c] = rref[i][n]
    return v


def det(rows):
    """Determinant over a field by elimination (integer entries are read as rationals)."""
    a = [[Fraction(v) if isinstance(v, int) else v for v in r] for r in rows]
    n = len(a)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d = d * a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / a[c][c]
                a[i] = [vi - f * vc for vi, vc in zip(a[i], a[c])]
    return d


def matmul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(len(b[0]))]
            for i in range(len(a))]


def transpose(a):
    return [list(r) for r in zip(*a)]


# -- symmetric matrices over Q(x) ---------------------------------------------

@dataclass
class Diagonalization:
    """Result of congruence diagonalization: P^T M P = diag(diag)."""

    diag: list
    transform: list
    rank: int

    @property
    def degenerate(self):
        return self.rank < len(self.diag)

    def product(self):
        out = RatFunc(1)
        for d in self.diag:
            out = out * d
        return out


def _pivot_cost(f):
    return (f.num.degree + f.den.degree, len(f.num.coeffs) + len(f.den.coeffs))


def diagonalize_symmetric(m):
    """Congruence-diagonalize a symmetric matrix over the rational function field.

    Entries may be UPoly, RatFunc or rationals. Pivots are chosen with the
    smallest degree first (ties by position), so constant directions come out
    first.
    """
    n = len(m)
    a = [[RatFunc.coerce(m[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix is not symmetric")
    p = [[RatFunc(int(i == j)) for j in range(n)] for i in range(n)]

    def add_col(dst, src, f):
        # congruence e_dst <- e_dst + f*e_src
        for r in range(n):
            a[r][dst] = a[r][dst] + f * a[r][src]
        for c in range(n):
            a[dst][c] = a[dst][c] + f * a[src][c]
        for r in range(n):
            p[r][dst] = p[r][dst] + f * p[r][src]

    def swap(i, j):
        if i == j:
            return
        a[i], a[j] = a[j], a[i]
        for r in range(n):
            a[r][i], a[r][j] = a[r][j], a[r][i]
            p[r][i], p[r][j] = p[r][j], p[r][i]

    rk = n
    for k in range(n):
        cands = [j for j in range(k, n) if a[j][j]]
        if not cands:
            off = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j]), None)
            if off is None:
                rk = k
                break
            i, j = off
            add_col(i, j, RatFunc(1))
            cands = [i]
        piv = min(cands, key=lambda j: (_pivot_cost(a[j][j]), j))
        swap(k, piv)
        for i in range(k + 1, n):
            if a[i][k]:
                add_col(i, k, -(a[i][k] / a[k][k]))
    return Diagonalization([a[i][i] for i in range(n)], p, rk)


def congruence(p, m):
    """P^T M P with RatFunc arithmetic."""
    n = len(m)
    mm = [[RatFunc.coerce(m[i][j]) for j in range(n)] for i in range(n)]
    pt = [[p[j][i] for j in range(n)] for i in range(n)]

    def mul(x, y):
        return [[sum((x[i][k] * y[k][j] for k in range(n)), RatFunc(0)) for j in range(n)] for i in range(n)]

    return mul(mul(pt, mm), p)


def charpoly_coeffs(m):
    """Coefficients c_0..c_n of det(lambda*I - M) for a matrix of UPoly entries.

    Faddeev-LeVerrier; only divisions by small integers occur, so the
    coefficients stay polynomial.
    """
    n = len(m)
    a = [[m[i][j] if isinstance(m[i][j], UPoly) else UPoly.const(m[i][j]) for j in range(n)] for i in range(n)]
    zero = UPoly()
    c = [zero] * (n + 1)
    c[n] = UPoly.const(1)
    mk = [[zero] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        prod = [[sum((a[i][l] * mk[l][j] for l in range(n)), zero) for j in range(n)] for i in range(n)]
        for i in range(n):
            prod[i][i] = prod[i][i] + c[n - k + 1]
        mk = prod
        am = [[sum((a[i][l] * mk[l][j] for l in range(n)), zero) for j in range(n)] for i in range(n)]
        tr = sum((am[i][i] for i in range(n)), zero)
        c[n - k] = tr * Fraction(-1, k)
    return c


def poly_det(m):
    """Determinant of a square matrix of UPoly entries."""
    n = len(m)
    c = charpoly_coeffs(m)
    return c[0] * (-1) ** n


def signature_from_charpoly_signs(signs):
    """(positive, negative, zero) eigenvalue counts of a real symmetric matrix.

    ``signs`` are the signs of c_0..c_n of its characteristic polynomial. All
    roots are real, so Descartes' rule of signs is exact.
    """
    n = len(signs) - 1
    z = next(k for k in range(n + 1) if signs[k] != 0)
    seq = [s for s in reversed(signs[z:]) if s]
    pos = sum(1 for x, y in zip(seq, seq[1:]) if x != y)
    return pos, n - z - pos, z


def signature_at(coeffs, point):
    """Signature of M(point) from its charpoly coefficient polynomials.

    ``point`` is a rational or an IsolatedRoot.
    """
    from .roots import IsolatedRoot

    if isinstance(point, IsolatedRoot):
        signs = [sign_at_root(c, point) for c in coeffs]
    else:
        signs = [c.sign_at(Fraction(point)) for c in coeffs]
    return signature_from_charpoly_signs(signs)


def rational_signature(rows):
    """Signature of a constant rational symmetric matrix."""
    n = len(rows)
    coeffs = charpoly_coeffs([[UPoly.const(rows[i][j]) for j in range(n)] for i in range(n)])
    return signature_from_charpoly_signs([c.sign_at(0) for c in coeffs])
