"""Elements of Q(t)^* (viewed inside Q_p(t)) in factored-atom form.

An element is ``const * p^pexp * prod h_i^{e_i}`` where ``const`` is a nonzero
rational prime to p and each atom ``h_i`` is a primitive integer polynomial
of degree 1 or 2 with positive leading coefficient, irreducible over Q_p.
Polynomials over Q are never factored: callers supply atoms.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from ..errors import UnsupportedPlace, ValidationError, ZeroInput
from .finite import check_odd_prime
from .local import vp

IntPoly = tuple


def itrim(f) -> IntPoly:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return tuple(f)


def ideg(f: IntPoly) -> int:
    return len(f) - 1


def content(f) -> int:
    g = 0
    for c in f:
        g = gcd(g, int(c))
    return g


def primitive_part(f) -> tuple[Fraction, IntPoly]:
    """Split a nonzero rational polynomial as scalar * primitive (positive lc)."""
    f = itrim(Fraction(c) for c in f)
    if not f:
        raise ZeroInput("zero polynomial")
    den = 1
    for c in f:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in f]
    g = content(ints)
    if ints[-1] < 0:
        g = -g
    prim = tuple(c // g for c in ints)
    return Fraction(g, den), prim


def ipoly_key(f: IntPoly):
    """Order atoms by degree, then by coefficient size from the top."""
    return (len(f), tuple(abs(c) for c in reversed(f)), tuple(reversed(f)))


def ipoly_str(f: IntPoly, var: str = "t") -> str:
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        terms.append(("-" if c < 0 else "+", body))
    s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        s += sign + body
    return s


def qp_is_square_rational(x: Fraction, p: int) -> bool:
    x = Fraction(x)
    v = vp(x, p)
    if v % 2:
        return False
    u = x / Fraction(p) ** v
    r = u.numerator * pow(u.denominator, -1, p) % p
    return pow(r, (p - 1) // 2, p) == 1


def validate_atom(h, p: int) -> IntPoly:
    h = itrim(int(c) for c in h)
    d = ideg(h)
    if d < 1:
        raise ValidationError("an atom must be a nonconstant polynomial")
    if d > 2:
        raise UnsupportedPlace(f"atom {ipoly_str(h)} has degree {d} > 2")
    if content(h) != 1 or h[-1] < 0:
        raise ValidationError(f"atom {ipoly_str(h)} is not primitive with positive leading coefficient")
    if d == 2:
        c, b, a = h
        disc = b * b - 4 * a * c
        if disc == 0 or qp_is_square_rational(Fraction(disc), p):
            raise ValidationError(f"atom {ipoly_str(h)} is reducible over Q_{p}")
    return h


def taylor_shift(h: IntPoly, c: int, s: int) -> IntPoly:
    """h(c + s*x) as an integer polynomial in x."""
    out = [0] * len(h)
    # Horner in the ring Z[x]
    acc: list = []
    for coef in reversed(h):
        # acc = acc * (c + s x) + coef
        new = [0] * (len(acc) + 1)
        for i, a in enumerate(acc):
            new[i] += a * c
            new[i + 1] += a * s
        new[0] += coef
        acc = new
    for i, a in enumerate(acc):
        out[i] = a
    return itrim(out)


def ieval(h: IntPoly, x):
    acc = 0
    for c in reversed(h):
        acc = acc * x + c
    return acc


class FactoredRatFunc:
    """const * p^pexp * prod atom^exp, an element of Q(t)^* inside Q_p(t)."""

    __slots__ = ("p", "const", "pexp", "factors", "var")

    def __init__(self, p: int, const, pexp: int = 0, factors=(), var: str = "t",
                 validate: bool = True):
        const = Fraction(const)
        if const == 0:
            raise ZeroInput("zero is not an element of Q(t)^*")
        v = vp(const, p)
        self.p = p
        self.const = const / Fraction(p) ** v
        self.pexp = pexp + v
        if validate:
            acc: dict = {}
            for h, e in factors:
                h = validate_atom(h, p)
                if not isinstance(e, int):
                    raise ValidationError("exponents must be integers")
                acc[h] = acc.get(h, 0) + e
            factors = tuple(sorted(((h, e) for h, e in acc.items() if e),
                                   key=lambda it: ipoly_key(it[0])))
        self.factors = tuple(factors)
        self.var = var

    @classmethod
    def constant(cls, c, p: int, var: str = "t") -> "FactoredRatFunc":
        return cls(p, c, 0, (), var, validate=False)

    @classmethod
    def atom(cls, h, p: int, var: str = "t", exp: int = 1) -> "FactoredRatFunc":
        return cls(p, 1, 0, ((h, exp),), var)

    def _merge(self, other_factors):
        acc: dict = {}
        for h, e in self.factors + tuple(other_factors):
            acc[h] = acc.get(h, 0) + e
        return tuple(sorted(((h, e) for h, e in acc.items() if e), key=lambda it: ipoly_key(it[0])))

    def _check(self, other) -> "FactoredRatFunc":
        if isinstance(other, (int, Fraction)):
            return FactoredRatFunc.constant(other, self.p, self.var)
        if not isinstance(other, FactoredRatFunc) or other.p != self.p:
            raise ValidationError("incompatible factored rational functions")
        if other.var != self.var and other.factors and self.factors:
            raise ValidationError(f"mixing coordinates {self.var} and {other.var}")
        return other

    def __mul__(self, other):
        other = self._check(other)
        var = self.var if self.factors else other.var
        return FactoredRatFunc(self.p, self.const * other.const, self.pexp + other.pexp,
                               self._merge(other.factors), var, validate=False)

    __rmul__ = __mul__

    def inverse(self) -> "FactoredRatFunc":
        return FactoredRatFunc(self.p, 1 / self.const, -self.pexp,
                               tuple((h, -e) for h, e in self.factors), self.var, validate=False)

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __rtruediv__(self, other):
        return self._check(other) * self.inverse()

    def __neg__(self):
        return FactoredRatFunc(self.p, -self.const, self.pexp, self.factors, self.var, validate=False)

    def __pow__(self, k: int):
        return FactoredRatFunc(self.p, self.const ** k, self.pexp * k,
                               tuple((h, e * k) for h, e in self.factors if e * k), self.var,
                               validate=False)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return False
            other = FactoredRatFunc.constant(other, self.p)
        return (isinstance(other, FactoredRatFunc) and self.p == other.p
                and self.const == other.const and self.pexp == other.pexp
                and self.factors == other.factors)

    def __hash__(self):
        return hash((self.p, self.const, self.pexp, self.factors))

    def exponent(self, h) -> int:
        h = tuple(h)
        return next((e for g, e in self.factors if g == h), 0)

    def atoms(self) -> list:
        return [h for h, _ in self.factors]

    def is_constant(self) -> bool:
        return not self.factors

    def with_var(self, var: str) -> "FactoredRatFunc":
        return FactoredRatFunc(self.p, self.const, self.pexp, self.factors, var, validate=False)

    def square_class(self) -> "FactoredRatFunc":
        """Exponents mod 2 and the constant reduced to its signed squarefree part."""
        c = self.const
        n = _squarefree_int(abs(c.numerator) * c.denominator)
        sign = -1 if c < 0 else 1
        return FactoredRatFunc(self.p, sign * n, self.pexp % 2,
                               tuple((h, e % 2) for h, e in self.factors if e % 2), self.var,
                               validate=False)

    def is_square(self) -> bool:
        """Square in Q_p(t): atoms are Q_p-irreducible, so exponents must be even."""
        if self.pexp % 2 or any(e % 2 for _, e in self.factors):
            return False
        return qp_is_square_rational(self.const, self.p)

    def __repr__(self):
        return f"FactoredRatFunc({self})"

    def __str__(self):
        parts = []
        c = self.const
        if self.pexp:
            parts.append(str(self.p) if self.pexp == 1 else f"{self.p}^{self.pexp}")
        for h, e in self.factors:
            s = ipoly_str(h, self.var)
            if len([x for x in h if x]) > 1:
                s = f"({s})"
            parts.append(s if e == 1 else f"{s}^{e}")
        if not parts:
            return str(c)
        body = "*".join(parts)
        if c == 1:
            return body
        if c == -1:
            return "-" + body
        if c.denominator != 1:
            return f"{c.numerator}*{body}/{c.denominator}" if c.numerator != 1 else f"{body}/{c.denominator}"
        return f"{c}*{body}"


def _squarefree_int(n: int) -> int:
    out, d = 1, 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e % 2:
            out *= d
        d += 1
    return out * n


class QptField:
    """The global field Q_p(t), with coefficients given as factored atoms."""

    kind = "qpt"

    def __init__(self, p: int, var: str = "t"):
        self.p = check_odd_prime(p)
        self.var = var

    def __eq__(self, other):
        return isinstance(other, QptField) and (self.p, self.var) == (other.p, other.var)

    def __hash__(self):
        return hash(("Qpt", self.p, self.var))

    def __repr__(self):
        return f"QptField({self.p}, {self.var!r})"

    def describe(self) -> str:
        return f"Q_{self.p}({self.var})"

    def to_json(self):
        return {"kind": "qpt", "p": self.p, "var": self.var}

    def one(self) -> FactoredRatFunc:
        return FactoredRatFunc.constant(1, self.p, self.var)

    def element(self, x) -> FactoredRatFunc:
        if isinstance(x, FactoredRatFunc):
            return x
        return FactoredRatFunc.constant(x, self.p, self.var)

    __call__ = element

    def is_square(self, x) -> bool:
        return self.element(x).is_square()

    def square_class(self, x) -> FactoredRatFunc:
        return self.element(x).square_class()
