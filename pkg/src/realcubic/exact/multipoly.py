"""Sparse multivariate polynomials with exact coefficients in Q or Q(i)."""

from fractions import Fraction

from .gaussrat import GaussRat, conj, simplify


def _exact(c):
    if isinstance(c, GaussRat):
        return simplify(c)
    if isinstance(c, (int, Fraction)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"coefficient must be exact, got {c!r}")


class MultiPoly:
    """Polynomial in a fixed ordered tuple of variables.

    ``terms`` maps exponent tuples to nonzero coefficients. Real coefficients
    are kept as ``Fraction``; genuinely complex ones as ``GaussRat``.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms=None):
        self.variables = tuple(variables)
        clean = {}
        if terms:
            n = len(self.variables)
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != n:
                    raise ValueError("exponent length does not match variables")
                c = _exact(c)
                if c:
                    clean[exp] = c
        self.terms = clean

    # -- constructors --------------------------------------------------
    @classmethod
    def zero(cls, variables):
        return cls(variables)

    @classmethod
    def const(cls, variables, c):
        n = len(tuple(variables))
        return cls(variables, {(0,) * n: c})

    @classmethod
    def var(cls, variables, name_or_index):
        variables = tuple(variables)
        i = name_or_index if isinstance(name_or_index, int) else variables.index(name_or_index)
        exp = [0] * len(variables)
        exp[i] = 1
        return cls(variables, {tuple(exp): 1})

    @classmethod
    def gens(cls, variables):
        variables = tuple(variables)
        return [cls.var(variables, i) for i in range(len(variables))]

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")
            return other
        return MultiPoly.const(self.variables, other)

    # -- structure -----------------------------------------------------
    @property
    def nvars(self):
        return len(self.variables)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def low_degree(self):
        if not self.terms:
            return -1
        return min(sum(e) for e in self.terms)

    def is_homogeneous(self, d=None):
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        return len(degs) == 1 and (d is None or degs == {d})

    def homogeneous_part(self, d):
        return MultiPoly(self.variables, {e: c for e, c in self.terms.items() if sum(e) == d})

    def truncate(self, d):
        """Drop all terms of total degree greater than ``d``."""
        return MultiPoly(self.variables, {e: c for e, c in self.terms.items() if sum(e) <= d})

    def coeff(self, exp):
        return self.terms.get(tuple(exp), Fraction(0))

    def is_real(self):
        return all(not isinstance(c, GaussRat) for c in self.terms.values())

    def conj(self):
        return MultiPoly(self.variables, {e: conj(c) for e, c in self.terms.items()})

    def support_vars(self):
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        return {self.variables[i] for i in used}

    # -- arithmetic ----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction, GaussRat)):
            return self == MultiPoly.const(self.variables, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.variables, out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussRat)):
            if not other:
                return MultiPoly(self.variables)
            return MultiPoly(self.variables, {e: c * other for e, c in self.terms.items()})
        other = self._lift(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.variables, out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if isinstance(scalar, MultiPoly):
            raise TypeError("polynomial division is not supported; divide by a scalar")
        return self * (1 / GaussRat.coerce(scalar) if isinstance(scalar, GaussRat) else Fraction(1) / scalar)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MultiPoly.const(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mul_truncated(self, other, d):
        """Product with every term of degree above ``d`` discarded."""
        other = self._lift(other)
        out = {}
        for e1, c1 in self.terms.items():
            s1 = sum(e1)
            for e2, c2 in other.terms.items():
                if s1 + sum(e2) > d:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.variables, out)

    # -- calculus and evaluation --------------------------------------
    def diff(self, var):
        i = var if isinstance(var, int) else self.variables.index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = list(e)
                ne[i] = k - 1
                out[tuple(ne)] = c * k
        return MultiPoly(self.variables, out)

    def gradient(self):
        return [self.diff(i) for i in range(self.nvars)]

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = point[0]
        return self.evaluate(point)

    def evaluate(self, point):
        """Exact value at a point given as a sequence of scalars."""
        if len(point) != self.nvars:
            raise ValueError("point dimension does not match variables")
        total = Fraction(0)
        powers = [dict() for _ in point]
        for e, c in self.terms.items():
            val = c
            for i, k in enumerate(e):
                if k:
                    cache = powers[i]
                    if k not in cache:
                        cache[k] = point[i] ** k
                    val = val * cache[k]
            total = total + val
        return simplify(total) if isinstance(total, GaussRat) else total

    def substitute(self, images, variables=None):
        """Compose: replace variable j by ``images[j]`` (MultiPolys or scalars).

        The result lives in ``variables`` (defaults to the images' ring).
        """
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        if variables is None:
            variables = next(im.variables for im in images if isinstance(im, MultiPoly))
        imgs = [im if isinstance(im, MultiPoly) else MultiPoly.const(variables, im) for im in images]
        powers = [dict() for _ in imgs]
        total = MultiPoly(variables)
        for e, c in self.terms.items():
            term = MultiPoly.const(variables, c)
            for i, k in enumerate(e):
                if k:
                    if k not in powers[i]:
                        powers[i][k] = imgs[i] ** k
                    term = term * powers[i][k]
            total = total + term
        return total

    def rename(self, variables):
        if len(tuple(variables)) != self.nvars:
            raise ValueError("wrong number of variables")
        return MultiPoly(variables, self.terms)

    def to_univariate(self, var):
        """Coefficient list (lowest first) when only ``var`` occurs."""
        i = var if isinstance(var, int) else self.variables.index(var)
        coeffs = {}
        for e, c in self.terms.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise ValueError("polynomial involves other variables")
            coeffs[e[i]] = c
        if not coeffs:
            return []
        return [coeffs.get(k, Fraction(0)) for k in range(max(coeffs) + 1)]

    # -- display -------------------------------------------------------
    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                (v if k == 1 else f"{v}^{k}") for v, k in zip(self.variables, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


X5 = ("x1", "x2", "x3", "x4", "x5")


def cubic_ring():
    """Generators x1..x5 of the ambient coordinate ring of P^4."""
    return MultiPoly.gens(X5)


def parse_poly(text, variables=X5):
    """Parse an arithmetic expression such as ``"(x1^2+x2^2)*x3 - 1/2*x4^3"``.

    Only +, -, *, / by constants, integer powers, integer literals, the
    variables and ``I`` (imaginary unit) are accepted.
    """
    import ast

    variables = tuple(variables)
    tree = ast.parse(text.strip().replace("^", "**"), mode="eval")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return MultiPoly.const(variables, node.value)
        if isinstance(node, ast.Name):
            if node.id in variables:
                return MultiPoly.var(variables, node.id)
            if node.id == "I":
                return MultiPoly.const(variables, GaussRat(0, 1))
            raise ValueError(f"unknown symbol {node.id!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left = ev(node.left)
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise ValueError("exponent must be an integer literal")
                return left ** node.right.value
            right = ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if right.degree() > 0:
                    raise ValueError("division by a non-constant")
                c = right.coeff((0,) * len(variables))
                return left * (1 / c)
        raise ValueError(f"unsupported syntax: {ast.dump(node)}")

    return ev(tree)
