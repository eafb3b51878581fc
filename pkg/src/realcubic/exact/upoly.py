"""Dense univariate polynomials over Q."""

from fractions import Fraction


class UPoly:
    """Polynomial with rational coefficients, stored lowest degree first.

    Trailing zeros are stripped, so ``coeffs[-1]`` is the leading coefficient
    and the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def const(cls, c):
        return cls((c,))

    @classmethod
    def from_roots(cls, roots, lead=1):
        p = cls.const(lead)
        for r in roots:
            p = p * cls((-Fraction(r), 1))
        return p

    # -- structure -----------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UPoly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    # -- arithmetic ----------------------------------------------------
    @staticmethod
    def _lift(other):
        if isinstance(other, UPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UPoly.const(other)
        return NotImplemented

    def __neg__(self):
        return UPoly(-c for c in self.coeffs)

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly(self[k] - other[k] for k in range(n))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UPoly(c * other for c in self.coeffs)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return UPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        result, base = UPoly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lead
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c:
                f = c / lead
                quot[k - dq] = f
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= f * b
        return UPoly(quot), UPoly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other):
        """True iff self divides ``other``."""
        return (other % self).is_zero()

    def monic(self):
        if not self.coeffs:
            return self
        return self * (1 / self.lead)

    def primitive(self):
        """Integer-coefficient multiple with content 1 and positive leading term."""
        from math import gcd, lcm

        if not self.coeffs:
            return self
        den = 1
        for c in self.coeffs:
            den = lcm(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return UPoly(Fraction(v, g) for v in ints)

    # -- calculus and evaluation --------------------------------------
    def derivative(self):
        return UPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x):
        v = self(x)
        return (v > 0) - (v < 0)

    def sign_at_infinity(self, positive=True):
        if not self.coeffs:
            return 0
        s = 1 if self.lead > 0 else -1
        if not positive and self.degree % 2:
            s = -s
        return s

    def compose(self, other):
        acc = UPoly()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def reverse(self, degree=None):
        """x^d p(1/x) for d = ``degree`` (default: own degree)."""
        d = self.degree if degree is None else degree
        cs = list(self.coeffs) + [Fraction(0)] * (d + 1 - len(self.coeffs))
        return UPoly(reversed(cs[: d + 1]))

    def __repr__(self):
        return f"UPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts).replace("+ -", "- ")


def gcd(a, b):
    """Monic greatest common divisor (zero if both are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def squarefree_part(p):
    """p / gcd(p, p'), made monic."""
    if p.is_zero():
        raise ValueError("zero input")
    if p.degree <= 0:
        return UPoly.const(1)
    g = gcd(p, p.derivative())
    return (p // g).monic()


def square_class_part(p):
    """Monic product of the factors of odd multiplicity (p modulo squares).

    Yun's square-free decomposition p = c * a1 * a2^2 * a3^3 ...; returns
    a1 * a3 * a5 ... . Two polynomials with the same square class part (up
    to a scalar) differ by a square factor and a constant.
    """
    if p.is_zero():
        raise ValueError("zero input")
    if p.degree <= 0:
        return UPoly.const(1)
    out = UPoly.const(1)
    b = p.monic()
    c = gcd(b, b.derivative())
    w = b // c
    k = 1
    while w.degree > 0:
        y = gcd(w, c)
        if k % 2:
            out = out * (w // y)
        w, c, k = y, c // y, k + 1
    return out.monic()


def is_squarefree(p):
    return squarefree_part(p).degree == p.degree
