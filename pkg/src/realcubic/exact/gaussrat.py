"""Gaussian rationals: exact elements of Q(i)."""

from fractions import Fraction
from numbers import Rational


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class GaussRat:
    """An element re + im*i of Q(i).

    Both parts are ``Fraction`` objects, so they are always in lowest terms
    with a positive denominator. Arithmetic mixes freely with ``int`` and
    ``Fraction``.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    @classmethod
    def coerce(cls, x):
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex numbers are not exact")
        return cls(x, 0)

    def is_real(self):
        return self.im == 0

    def conj(self):
        return GaussRat(self.re, -self.im)

    def norm(self):
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussRat(self.re + other, self.im)
        if isinstance(other, GaussRat):
            return GaussRat(self.re + other.re, self.im + other.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussRat(self.re - other, self.im)
        if isinstance(other, GaussRat):
            return GaussRat(self.re - other.re, self.im - other.im)
        return NotImplemented

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussRat(self.re * other, self.im * other)
        if isinstance(other, GaussRat):
            a, b, c, d = self.re, self.im, other.re, other.im
            return GaussRat(a * c - b * d, a * d + b * c)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("GaussRat division by zero")
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("GaussRat division by zero")
            return GaussRat(self.re / other, self.im / other)
        if isinstance(other, GaussRat):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return GaussRat.coerce(other) * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = GaussRat(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussRat({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*I"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re} {sign} {abs(self.im)}*I)"


I = GaussRat(0, 1)


def conj(x):
    """Complex conjugate of an exact scalar (identity on rationals)."""
    if isinstance(x, GaussRat):
        return x.conj()
    return x


def simplify(x):
    """Collapse a real GaussRat to a Fraction; leave everything else alone."""
    if isinstance(x, GaussRat) and x.im == 0:
        return x.re
    return x
