"""Sturm sequences, real root isolation and exact sign determination."""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .upoly import UPoly, gcd, squarefree_part

INF = math.inf


class Order(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def _check_nonzero(p):
    if not isinstance(p, UPoly):
        p = UPoly(p)
    if p.is_zero():
        raise ValueError("zero input")
    return p


def sturm_chain(p):
    """Canonical Sturm sequence of the squarefree part of ``p``."""
    p = squarefree_part(_check_nonzero(p))
    chain = [p]
    if p.degree <= 0:
        return chain
    chain.append(p.derivative())
    while True:
        r = -(chain[-2] % chain[-1])
        if r.is_zero():
            break
        chain.append(r)
    return chain


def _sign_at(p, x):
    if x == INF:
        return p.sign_at_infinity(True)
    if x == -INF:
        return p.sign_at_infinity(False)
    return p.sign_at(Fraction(x))


def sign_variations(chain, x):
    """Number of sign changes of the chain evaluated at ``x`` (zeros skipped)."""
    count, last = 0, 0
    for q in chain:
        s = _sign_at(q, x)
        if s:
            if last and s != last:
                count += 1
            last = s
    return count


def _count(chain, lo, hi):
    return sign_variations(chain, lo) - sign_variations(chain, hi)


def count_real_roots(p, lo=-INF, hi=INF):
    """Number of distinct real roots of ``p`` in (lo, hi]; ``lo``/``hi`` may be infinite."""
    if not lo < hi:
        raise ValueError("need lo < hi")
    return _count(sturm_chain(p), lo, hi)


def cauchy_bound(p):
    """A rational strictly greater than the absolute value of every root."""
    lead = abs(p.lead)
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))


@dataclass(frozen=True)
class IsolatedRoot:
    """A real algebraic number: the unique root of ``poly`` in [lo, hi].

    ``poly`` is squarefree. Either ``lo == hi`` (the root is that rational) or
    the root lies strictly inside and ``poly`` is nonzero at both endpoints.
    """

    poly: UPoly
    lo: Fraction
    hi: Fraction

    @property
    def is_exact(self):
        return self.lo == self.hi

    @property
    def width(self):
        return self.hi - self.lo

    def midpoint(self):
        return (self.lo + self.hi) / 2

    def __float__(self):
        r = self.refine(Fraction(1, 2**53))
        return float((r.lo + r.hi) / 2)

    def bisect(self):
        """One halving step; may land exactly on the root."""
        if self.is_exact:
            return self
        m = self.midpoint()
        sm = self.poly.sign_at(m)
        if sm == 0:
            return IsolatedRoot(self.poly, m, m)
        if sm == self.poly.sign_at(self.lo):
            return IsolatedRoot(self.poly, m, self.hi)
        return IsolatedRoot(self.poly, self.lo, m)

    def refine(self, width=Fraction(1, 2**32)):
        r = self
        while r.width > width:
            r = r.bisect()
        return r

    def __repr__(self):
        if self.is_exact:
            return f"IsolatedRoot({self.lo})"
        return f"IsolatedRoot({self.poly}, [{self.lo}, {self.hi}] ~ {float(self):.12g})"


def isolate_real_roots(p):
    """Sorted disjoint isolating intervals, one per distinct real root of ``p``."""
    p = squarefree_part(_check_nonzero(p))
    if p.degree <= 0:
        return []
    chain = sturm_chain(p)
    b = cauchy_bound(p)
    out = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        n = _count(chain, lo, hi)
        if n == 0:
            continue
        if n == 1:
            out.append(IsolatedRoot(p, lo, hi))
            continue
        m = _split_point(p, lo, hi)
        stack.append((m, hi))
        stack.append((lo, m))
    out.sort(key=lambda r: r.lo)
    return out


def _split_point(p, lo, hi):
    # Avoid splitting at a root so endpoints always have nonzero sign.
    for k in (2, 3, 5, 7, 11, 13):
        m = lo + (hi - lo) / k
        if p.sign_at(m) != 0:
            return m
    k = 17
    while True:
        m = lo + (hi - lo) / k
        if p.sign_at(m) != 0:
            return m
        k += 2


def compare_root_to_rational(r, c):
    """Exact ordering of the algebraic number ``r`` against the rational ``c``."""
    c = Fraction(c)
    if r.is_exact:
        return Order((r.lo > c) - (r.lo < c))
    if c <= r.lo:
        return Order.GREATER
    if c >= r.hi:
        return Order.LESS
    sc = r.poly.sign_at(c)
    if sc == 0:
        return Order.EQUAL
    if sc == r.poly.sign_at(r.lo):
        return Order.GREATER
    return Order.LESS


def sign_at_root(q, r):
    """Exact sign of the rational polynomial ``q`` at the algebraic number ``r``."""
    if not isinstance(q, UPoly):
        q = UPoly(q)
    if q.is_zero():
        return 0
    if r.is_exact:
        return q.sign_at(r.lo)
    g = gcd(r.poly, q)
    if g.degree > 0 and count_real_roots(g, r.lo, r.hi) > 0:
        return 0
    if q.degree <= 0:
        return q.sign_at(0)
    qs = sturm_chain(q)
    while True:
        if r.is_exact:
            return q.sign_at(r.lo)
        if q.sign_at(r.lo) != 0 and _count(qs, r.lo, r.hi) == 0:
            return q.sign_at(r.lo)
        r = r.bisect()


def root_floats(p):
    return [float(r) for r in isolate_real_roots(p)]


def distinct_real_root_count(p):
    return count_real_roots(p, -INF, INF)


def has_distinct_real_roots(p, n):
    """True iff ``p`` has degree ``n``, is squarefree, and all n roots are real."""
    p = _check_nonzero(p)
    return p.degree == n and squarefree_part(p).degree == n and distinct_real_root_count(p) == n
