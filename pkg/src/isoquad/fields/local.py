"""Non-dyadic local fields Q_p and their quadratic extensions.

A field is Q_p(θ) with θ a root of a monic integer quadratic
``z^2 + c1*z + c0`` that is either irreducible mod p (unramified) or
Eisenstein (totally ramified), or plain Q_p.  Elements are stored as a
valuation in the normalized valuation of the field plus a unit given by its
coordinates in the integral basis {1, θ} modulo p^prec.  Elements built from
exact rational data also remember that exact value, so valuations of exact
inputs never depend on the working precision.
"""

from __future__ import annotations

import os
from fractions import Fraction
from functools import cached_property

from ..errors import NonUnit, PrecisionExhausted, ValidationError, ZeroInput
from .finite import FiniteField, FFElem, check_odd_prime, ff_is_square, ff_sqrt, is_irreducible, pnorm

DEFAULT_PRECISION = int(os.environ.get("ISOQUAD_PRECISION", "12"))


def vp(x, p: int) -> int:
    """p-adic valuation of a nonzero int or Fraction."""
    x = Fraction(x)
    if x == 0:
        raise ZeroInput("valuation of zero")
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def smallest_nonresidue(p: int) -> int:
    """The canonical nonsquare unit used for the symbol ``a``."""
    check_odd_prime(p)
    for n in range(2, p):
        if pow(n, (p - 1) // 2, p) == p - 1:
            return n
    raise AssertionError("unreachable")


def _mod_frac(x: Fraction, m: int, p: int) -> int:
    if x.denominator % p == 0:
        raise NonUnit(f"{x} is not p-integral")
    return x.numerator * pow(x.denominator, -1, m) % m


class LocalField:
    """Q_p, or Q_p(θ) with θ^2 + c1*θ + c0 = 0 unramified or Eisenstein."""

    kind = "local"

    def __init__(self, p: int, poly=None, precision: int | None = None):
        self.p = check_odd_prime(p)
        self.precision = DEFAULT_PRECISION if precision is None else int(precision)
        if self.precision < 1:
            raise ValidationError("precision must be positive")
        if poly is None:
            self.ext = "trivial"
            self.c0 = self.c1 = None
            self.e = self.f = 1
        else:
            c0, c1 = (int(c) for c in poly)
            self.c0, self.c1 = c0, c1
            if is_irreducible(pnorm((c0, c1, 1), p), p):
                self.ext = "unramified"
                self.e, self.f = 1, 2
            elif c0 % p == 0 and c0 % (p * p) != 0 and c1 % p == 0:
                self.ext = "eisenstein"
                self.e, self.f = 2, 1
            else:
                raise ValidationError(
                    f"z^2{c1:+d}*z{c0:+d} is neither irreducible mod {p} nor Eisenstein")
        self.degree = self.e * self.f
        self.symbol = "θ" if self.ext == "unramified" else "π"

    # identity ---------------------------------------------------------------
    def _key(self):
        return (self.p, self.c0, self.c1, self.precision)

    def __eq__(self, other):
        return isinstance(other, LocalField) and self._key() == other._key()

    def __hash__(self):
        return hash(("LF",) + self._key())

    def __repr__(self):
        if self.ext == "trivial":
            return f"LocalField({self.p})"
        return f"LocalField({self.p}, ({self.c0}, {self.c1}))"

    def describe(self) -> str:
        if self.ext == "trivial":
            return f"Q_{self.p}"
        return (f"Q_{self.p}({self.symbol}), {self.symbol}^2{self.c1:+d}*{self.symbol}{self.c0:+d}=0"
                f" ({self.ext})")

    def to_json(self):
        return {"kind": "local", "p": self.p,
                "poly": None if self.ext == "trivial" else [self.c0, self.c1],
                "ext": self.ext, "precision": self.precision}

    @cached_property
    def residue_field(self) -> FiniteField:
        if self.ext == "unramified":
            return FiniteField(self.p, (self.c0, self.c1, 1))
        return FiniteField(self.p)

    @cached_property
    def nonresidue(self) -> int:
        return smallest_nonresidue(self.p)

    @property
    def dim(self) -> int:
        return 1 if self.ext == "trivial" else 2

    # exact arithmetic in Q(θ) ---------------------------------------------------
    def _exact(self, x) -> tuple:
        if isinstance(x, (int, Fraction)):
            x = (Fraction(x),) + (Fraction(0),) * (self.dim - 1)
        x = tuple(Fraction(c) for c in x)
        if len(x) != self.dim:
            raise ValidationError(f"expected {self.dim} coordinates, got {len(x)}")
        return x

    def exact_mul(self, x: tuple, y: tuple) -> tuple:
        if self.dim == 1:
            return (x[0] * y[0],)
        a, b = x
        c, d = y
        return (a * c - self.c0 * b * d, a * d + b * c - self.c1 * b * d)

    def exact_inv(self, x: tuple) -> tuple:
        if self.dim == 1:
            return (1 / x[0],)
        a, b = x
        # conj(a + bθ) = (a - c1*b) - bθ ; N = a^2 - c1*a*b + c0*b^2
        n = a * a - self.c1 * a * b + self.c0 * b * b
        return ((a - self.c1 * b) / n, -b / n)

    def exact_valuation(self, x: tuple) -> int:
        if not any(x):
            raise ZeroInput("valuation of zero")
        if self.ext == "trivial":
            return vp(x[0], self.p)
        vals = [vp(c, self.p) if c else None for c in x]
        if self.ext == "unramified":
            return min(v for v in vals if v is not None)
        cands = []
        if vals[0] is not None:
            cands.append(2 * vals[0])
        if vals[1] is not None:
            cands.append(2 * vals[1] + 1)
        return min(cands)

    def _uniformizer_power(self, k: int) -> tuple:
        if self.ext != "eisenstein":
            return self._exact(Fraction(self.p) ** k)
        base = (Fraction(0), Fraction(1)) if k >= 0 else self.exact_inv((Fraction(0), Fraction(1)))
        out = self._exact(1)
        for _ in range(abs(k)):
            out = self.exact_mul(out, base)
        return out

    # element construction ------------------------------------------------------
    def __call__(self, x) -> "LocalElement":
        return self.element(x)

    def element(self, x) -> "LocalElement":
        """Element from an exact value: int, Fraction, or coordinate pair (a, b) = a + bθ."""
        if isinstance(x, LocalElement):
            if x.field != self:
                raise ValidationError("element belongs to a different local field")
            return x
        ex = self._exact(x)
        v = self.exact_valuation(ex)
        u = self.exact_mul(ex, self._uniformizer_power(-v))
        m = self.p ** self.precision
        unit = tuple(_mod_frac(c, m, self.p) for c in u)
        return LocalElement(self, v, unit, self.precision, ex)

    def one(self) -> "LocalElement":
        return self.element(1)

    def uniformizer(self) -> "LocalElement":
        return self.element(self._uniformizer_power(1))

    def from_unit(self, val: int, unit, prec: int | None = None) -> "LocalElement":
        """Element π^val * unit with unit given by integer coordinates mod p^prec."""
        prec = self.precision if prec is None else prec
        m = self.p ** prec
        unit = tuple(int(c) % m for c in (unit if isinstance(unit, (tuple, list)) else (unit,)))
        unit = unit + (0,) * (self.dim - len(unit))
        e = LocalElement(self, val, unit, prec, None)
        if e.residue_raw().is_zero():
            raise NonUnit("unit part has zero residue")
        return e

    def uniformizer_str(self) -> str:
        return "π" if self.ext == "eisenstein" else str(self.p)

    def split(self, x: "LocalElement"):
        """(valuation, residue of the unit part) with respect to the fixed uniformizer."""
        x = self.element(x)
        return x.val, x.unit_residue()

    def is_square(self, x) -> bool:
        return lf_is_square(self.element(x))

    def square_class(self, x) -> "LocalElement":
        """Canonical representative π^(v mod 2) * (1 or the smallest nonresidue)."""
        x = self.element(x)
        base = self.one() if x.val % 2 == 0 else self.element(self._uniformizer_power(1))
        if ff_is_square(x.unit_residue()):
            return base
        return base * self.nonsquare_unit

    @cached_property
    def nonsquare_unit(self) -> "LocalElement":
        if self.ext == "unramified":
            F = self.residue_field
            return self.element(tuple(Fraction(c) for c in F.nonsquare.value))
        return self.element(self.nonresidue)


class LocalElement:
    """Nonzero element π^val * unit of a LocalField."""

    __slots__ = ("field", "val", "unit", "prec", "exact")

    def __init__(self, field: LocalField, val: int, unit: tuple, prec: int, exact=None):
        self.field = field
        self.val = val
        self.unit = unit
        self.prec = prec
        self.exact = exact

    # helpers ---------------------------------------------------------------
    def _mod(self):
        return self.field.p ** self.prec

    def _unit_mul(self, u: tuple, w: tuple, m: int) -> tuple:
        F = self.field
        if F.dim == 1:
            return (u[0] * w[0] % m,)
        a, b = u
        c, d = w
        return ((a * c - F.c0 * b * d) % m, (a * d + b * c - F.c1 * b * d) % m)

    def _unit_inv(self, u: tuple, m: int) -> tuple:
        F = self.field
        if F.dim == 1:
            return (pow(u[0], -1, m),)
        a, b = u
        n = (a * a - F.c1 * a * b + F.c0 * b * b) % m
        ni = pow(n, -1, m)
        return ((a - F.c1 * b) * ni % m, (-b) * ni % m)

    def _coerce(self, other) -> "LocalElement":
        if isinstance(other, LocalElement):
            if other.field != self.field:
                raise ValidationError("mixing elements of different local fields")
            return other
        return self.field.element(other)

    # arithmetic ------------------------------------------------------------
    def __mul__(self, other):
        other = self._coerce(other)
        prec = min(self.prec, other.prec)
        m = self.field.p ** prec
        ex = None
        if self.exact is not None and other.exact is not None:
            ex = self.field.exact_mul(self.exact, other.exact)
        return LocalElement(self.field, self.val + other.val,
                            self._unit_mul(self.unit, other.unit, m), prec, ex)

    __rmul__ = __mul__

    def inverse(self) -> "LocalElement":
        ex = self.field.exact_inv(self.exact) if self.exact is not None else None
        return LocalElement(self.field, -self.val, self._unit_inv(self.unit, self._mod()), self.prec, ex)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __neg__(self):
        m = self._mod()
        ex = tuple(-c for c in self.exact) if self.exact is not None else None
        return LocalElement(self.field, self.val, tuple((-c) % m for c in self.unit), self.prec, ex)

    def __pow__(self, e: int):
        out = self.field.one()
        base = self if e >= 0 else self.inverse()
        for _ in range(abs(e)):
            out = out * base
        return out

    def _shift(self, u: tuple, k: int, m: int) -> tuple:
        """Coordinates of u * π^k for k >= 0."""
        F = self.field
        if F.ext != "eisenstein":
            return tuple(c * F.p ** k % m for c in u)
        for _ in range(k):
            a, b = u
            u = ((-F.c0 * b) % m, (a - F.c1 * b) % m)
        return u

    def __add__(self, other):
        other = self._coerce(other)
        F = self.field
        if self.exact is not None and other.exact is not None:
            ex = tuple(a + b for a, b in zip(self.exact, other.exact))
            if not any(ex):
                raise ZeroInput("sum is zero")
            return F.element(ex)
        v = min(self.val, other.val)
        # absolute precision of each summand, in powers of p
        prec = min(self.prec + (self.val - v) // F.e, other.prec + (other.val - v) // F.e)
        m = F.p ** prec
        s = tuple((a + b) % m for a, b in zip(self._shift(self.unit, self.val - v, m),
                                               other._shift(other.unit, other.val - v, m)))
        w = 0
        p = F.p
        while True:
            if not any(s) or prec <= 0:
                raise PrecisionExhausted("sum vanishes at the working precision")
            if F.ext == "eisenstein":
                if s[0] % p:
                    break
                # (a + bπ)/π = b - (a/p)(π + c1)/(c0/p)
                a1 = s[0] // p
                e0 = F.c0 // p
                inv = pow(e0, -1, p ** prec)
                s = ((s[1] - a1 * F.c1 * inv) % p ** (prec - 1), (-a1 * inv) % p ** (prec - 1))
            else:
                if any(c % p for c in s):
                    break
                s = tuple(c // p for c in s)
            prec -= 1
            w += 1
        return LocalElement(F, v + w, s, prec, None)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __eq__(self, other):
        if not isinstance(other, LocalElement):
            try:
                other = self.field.element(other)
            except Exception:
                return NotImplemented
        if self.field != other.field or self.val != other.val:
            return False
        if self.exact is not None and other.exact is not None:
            return self.exact == other.exact
        m = self.field.p ** min(self.prec, other.prec)
        return all((a - b) % m == 0 for a, b in zip(self.unit, other.unit))

    def __hash__(self):
        return hash((self.field, self.val, tuple(c % self.field.p for c in self.unit)))

    # residue data ------------------------------------------------------------
    def residue_raw(self) -> FFElem:
        if self.prec < 1:
            raise PrecisionExhausted("no digits of the unit are known")
        F = self.field
        if F.ext == "unramified":
            return F.residue_field(self.unit)
        return F.residue_field(self.unit[0])

    def unit_residue(self) -> FFElem:
        return self.residue_raw()

    def unit_part(self) -> "LocalElement":
        ex = None
        if self.exact is not None:
            ex = self.field.exact_mul(self.exact, self.field._uniformizer_power(-self.val))
        return LocalElement(self.field, 0, self.unit, self.prec, ex)

    def sqrt(self) -> "LocalElement":
        """Hensel-lifted square root to the element's precision."""
        if not lf_is_square(self):
            raise ValidationError(f"{self} is not a square")
        F = self.field
        m = self._mod()
        r = ff_sqrt(self.unit_residue())
        if F.ext == "unramified":
            x = tuple(r.value)
        else:
            x = (r.value[0],) + (0,) * (F.dim - 1)
        u = self.unit
        inv2 = pow(2, -1, m)
        for _ in range(self.prec.bit_length() + 2):
            # Newton: x <- (x + u/x)/2
            q = self._unit_mul(u, self._unit_inv(x, m), m)
            x = tuple((a + b) * inv2 % m for a, b in zip(x, q))
        root = LocalElement(F, self.val // 2, x, self.prec, None)
        return root

    def __repr__(self):
        return f"LocalElement({self})"

    def __str__(self):
        if self.exact is not None:
            return _exact_str(self.exact, self.field.symbol)
        F = self.field
        unit = _exact_str(tuple(Fraction(c) for c in self.unit), F.symbol)
        head = "" if self.val == 0 else f"{F.symbol if F.ext == 'eisenstein' else F.p}^{self.val}*"
        return f"{head}({unit} + O(p^{self.prec}))"


def _exact_str(x: tuple, symbol: str) -> str:
    a = x[0]
    if len(x) == 1 or x[1] == 0:
        return str(a)
    b = x[1]
    bs = symbol if b == 1 else ("-" + symbol if b == -1 else f"{b}*{symbol}")
    if a == 0:
        return bs
    return f"{a}{'' if bs.startswith('-') else '+'}{bs}"


def lf_is_square(e: LocalElement) -> bool:
    """Square test: even valuation and square unit residue (Hensel, p odd)."""
    if not isinstance(e, LocalElement):
        raise ValidationError("lf_is_square expects a LocalElement")
    if e.val % 2:
        return False
    return ff_is_square(e.residue_raw())


def lf_residue(e: LocalElement) -> FFElem:
    if e.val != 0:
        raise NonUnit(f"{e} has valuation {e.val}; only units have residues")
    return e.residue_raw()


def tame_symbol_sign(va: int, ua: FFElem, vb: int, ub: FFElem) -> int:
    """Quadratic character of (-1)^(va*vb) ua^vb / ub^va in a finite residue field."""
    s = ua ** vb * ub ** (-va)
    if (va * vb) % 2:
        s = -s
    return 1 if ff_is_square(s) else -1


def hilbert_symbol(a: LocalElement, b: LocalElement) -> int:
    """Hilbert symbol (a, b) in a non-dyadic local field, via the tame formula."""
    if a.field != b.field:
        raise ValidationError("hilbert_symbol needs elements of one field")
    return tame_symbol_sign(a.val, a.unit_residue(), b.val, b.unit_residue())
