"""Rational functions over F_p in factored form, and the places of F_p(z)."""

from __future__ import annotations

from functools import cached_property

from ..errors import ValidationError, ZeroInput
from .finite import (
    FiniteField, FFElem, check_odd_prime, ffp_factorize, is_irreducible, pcompose, pdeg, pmod,
    pmonic, pmul, pnorm, poly_key, poly_str, ppow,
)
from .local import smallest_nonresidue


def _merge(factors, p) -> tuple:
    acc: dict = {}
    for f, e in factors:
        acc[f] = acc.get(f, 0) + e
    return tuple(sorted(((f, e) for f, e in acc.items() if e), key=lambda it: poly_key(it[0])))


class FFRatFunc:
    """c * prod f_i^{e_i} in F_p(z)^*, the f_i monic irreducible and distinct."""

    __slots__ = ("p", "const", "factors", "var")

    def __init__(self, p: int, const: int, factors=(), var: str = "z", validate: bool = True):
        self.p = p
        self.const = const % p
        if self.const == 0:
            raise ZeroInput("zero is not an element of F_p(z)^*")
        if validate:
            seen = set()
            for f, e in factors:
                f = pnorm(f, p)
                if not isinstance(e, int) or e == 0:
                    raise ValidationError("exponents must be nonzero integers")
                if f in seen:
                    raise ValidationError("repeated factor")
                if f[-1] != 1 or not is_irreducible(f, p):
                    raise ValidationError(f"{poly_str(f, var)} is not monic irreducible mod {p}")
                seen.add(f)
            factors = _merge(((pnorm(f, p), e) for f, e in factors), p)
        self.factors = tuple(factors)
        self.var = var

    # constructors ----------------------------------------------------------
    @classmethod
    def from_poly(cls, poly, p: int, var: str = "z") -> "FFRatFunc":
        poly = pnorm(poly, p)
        if not poly:
            raise ZeroInput("zero polynomial")
        lc = poly[-1]
        if pdeg(poly) == 0:
            return cls(p, lc, (), var, validate=False)
        facs = ffp_factorize(pmonic(poly, p), p)
        return cls(p, lc, tuple(facs), var, validate=False)

    @classmethod
    def constant(cls, c: int, p: int, var: str = "z") -> "FFRatFunc":
        return cls(p, c, (), var, validate=False)

    # arithmetic ------------------------------------------------------------
    def _check(self, other) -> "FFRatFunc":
        if isinstance(other, int):
            return FFRatFunc.constant(other, self.p, self.var)
        if not isinstance(other, FFRatFunc) or other.p != self.p:
            raise ValidationError("incompatible rational functions")
        return other

    def __mul__(self, other):
        other = self._check(other)
        return FFRatFunc(self.p, self.const * other.const,
                         _merge(self.factors + other.factors, self.p), self.var, validate=False)

    __rmul__ = __mul__

    def inverse(self) -> "FFRatFunc":
        return FFRatFunc(self.p, pow(self.const, -1, self.p),
                         tuple((f, -e) for f, e in self.factors), self.var, validate=False)

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __neg__(self):
        return FFRatFunc(self.p, -self.const, self.factors, self.var, validate=False)

    def __pow__(self, k: int):
        c = pow(self.const, k, self.p) if k >= 0 else pow(pow(self.const, -1, self.p), -k, self.p)
        return FFRatFunc(self.p, c, tuple((f, e * k) for f, e in self.factors if e * k),
                         self.var, validate=False)

    def __eq__(self, other):
        if isinstance(other, int):
            other = FFRatFunc.constant(other, self.p) if other % self.p else None
        return (isinstance(other, FFRatFunc) and self.p == other.p and self.const == other.const
                and self.factors == other.factors)

    def __hash__(self):
        return hash((self.p, self.const, self.factors))

    # structure ---------------------------------------------------------------
    def degree(self) -> int:
        return sum(pdeg(f) * e for f, e in self.factors)

    def numerator(self) -> tuple:
        out = (self.const,)
        for f, e in self.factors:
            if e > 0:
                out = pmul(out, ppow(f, e, self.p), self.p)
        return out

    def denominator(self) -> tuple:
        out = (1,)
        for f, e in self.factors:
            if e < 0:
                out = pmul(out, ppow(f, -e, self.p), self.p)
        return out

    def is_polynomial(self) -> bool:
        return all(e > 0 for _, e in self.factors)

    def square_class(self) -> "FFRatFunc":
        c = 1 if pow(self.const, (self.p - 1) // 2, self.p) == 1 else smallest_nonresidue(self.p)
        return FFRatFunc(self.p, c, tuple((f, e % 2) for f, e in self.factors if e % 2),
                         self.var, validate=False)

    def substitute(self, g) -> "FFRatFunc":
        """Compose with a nonconstant polynomial map z -> g(z), refactoring."""
        g = pnorm(g, self.p)
        out = FFRatFunc.constant(self.const, self.p, self.var)
        for f, e in self.factors:
            out = out * FFRatFunc.from_poly(pcompose(f, g, self.p), self.p, self.var) ** e
        return out

    def with_var(self, var: str) -> "FFRatFunc":
        return FFRatFunc(self.p, self.const, self.factors, var, validate=False)

    def __repr__(self):
        return f"FFRatFunc({self})"

    def __str__(self):
        c = self.const if self.const <= self.p // 2 else self.const - self.p
        parts = []
        for f, e in self.factors:
            s = poly_str(f, self.var, signed_p=self.p)
            if pdeg(f) > 0 and len([x for x in f if x]) > 1:
                s = f"({s})"
            parts.append(s if e == 1 else f"{s}^{e}")
        if not parts:
            return str(c)
        body = "*".join(parts)
        if c == 1:
            return body
        if c == -1:
            return "-" + body
        return f"{c}*{body}"


def ffq_ratfunc_is_square(g: FFRatFunc) -> bool:
    """True iff every exponent is even and the leading constant is a square mod p."""
    return all(e % 2 == 0 for _, e in g.factors) and pow(g.const, (g.p - 1) // 2, g.p) == 1


class FFRatField:
    """The global field F_p(z)."""

    kind = "ffz"

    def __init__(self, p: int, var: str = "z"):
        self.p = check_odd_prime(p)
        self.var = var

    def __eq__(self, other):
        return isinstance(other, FFRatField) and self.p == other.p

    def __hash__(self):
        return hash(("FFz", self.p))

    def __repr__(self):
        return f"FFRatField({self.p}, {self.var!r})"

    def describe(self) -> str:
        return f"F_{self.p}({self.var})"

    def to_json(self):
        return {"kind": "ffz", "p": self.p, "var": self.var}

    def one(self) -> FFRatFunc:
        return FFRatFunc.constant(1, self.p, self.var)

    def element(self, x) -> FFRatFunc:
        if isinstance(x, FFRatFunc):
            return x
        if isinstance(x, int):
            return FFRatFunc.constant(x, self.p, self.var)
        return FFRatFunc.from_poly(x, self.p, self.var)

    __call__ = element

    def is_square(self, x) -> bool:
        return ffq_ratfunc_is_square(self.element(x))

    def square_class(self, x) -> FFRatFunc:
        return self.element(x).square_class()

    def place(self, poly=None) -> "FFPlace":
        return FFPlace(self.p, poly, self.var)

    def bad_places(self, coeffs) -> list["FFPlace"]:
        """Every finite place dividing some coefficient, then infinity."""
        polys = set()
        for c in coeffs:
            polys.update(f for f, _ in c.factors)
        return [FFPlace(self.p, f, self.var) for f in sorted(polys, key=poly_key)] + \
            [FFPlace(self.p, None, self.var)]


class FFPlace:
    """A place of F_p(z): a monic irreducible polynomial, or infinity (``poly=None``).

    Also serves as the field tag of the completion at that place.
    """

    kind = "ffz-completion"

    def __init__(self, p: int, poly=None, var: str = "z"):
        self.p = check_odd_prime(p)
        self.var = var
        if poly is not None:
            poly = pnorm(poly, p)
            if poly[-1] != 1 or not is_irreducible(poly, p):
                raise ValidationError(f"{poly_str(poly, var)} is not monic irreducible mod {p}")
        self.poly = poly

    def __eq__(self, other):
        return isinstance(other, FFPlace) and (self.p, self.poly) == (other.p, other.poly)

    def __hash__(self):
        return hash(("FFPlace", self.p, self.poly))

    def sort_key(self):
        return (1, ()) if self.poly is None else (0, poly_key(self.poly))

    def __repr__(self):
        return f"FFPlace({self})"

    def __str__(self):
        return f"1/{self.var}" if self.poly is None else poly_str(self.poly, self.var, signed_p=self.p)

    def describe(self) -> str:
        return f"completion of F_{self.p}({self.var}) at {self}"

    def to_json(self):
        return {"kind": "ffz-completion", "p": self.p, "var": self.var,
                "place": None if self.poly is None else list(self.poly)}

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else pdeg(self.poly)

    @cached_property
    def residue_field(self) -> FiniteField:
        if self.poly is None or pdeg(self.poly) == 1:
            return FiniteField(self.p)
        return FiniteField(self.p, self.poly, symbol=f"{self.var}̄")

    def element(self, x) -> FFRatFunc:
        return FFRatField(self.p, self.var).element(x)

    def one(self) -> FFRatFunc:
        return FFRatFunc.constant(1, self.p, self.var)

    def valuation(self, g: FFRatFunc) -> int:
        if self.poly is None:
            return -g.degree()
        return next((e for f, e in g.factors if f == self.poly), 0)

    def uniformizer_str(self) -> str:
        return str(self)

    def split(self, g: FFRatFunc) -> tuple[int, FFElem]:
        """(valuation, residue of g * uniformizer^-valuation)."""
        g = self.element(g)
        F = self.residue_field
        if self.poly is None:
            return -g.degree(), F(g.const)
        v = 0
        r = F(g.const)
        for f, e in g.factors:
            if f == self.poly:
                v = e
                continue
            if pdeg(self.poly) == 1:
                root = (-self.poly[0]) % self.p
                acc = 0
                for c in reversed(f):
                    acc = (acc * root + c) % self.p
                r = r * F(acc) ** e
            else:
                r = r * F(pmod(f, self.poly, self.p)) ** e
        return v, r

    def is_square(self, g) -> bool:
        from .finite import ff_is_square
        v, r = self.split(g)
        return v % 2 == 0 and ff_is_square(r)

    def square_class(self, g) -> FFRatFunc:
        return self.element(g).square_class()
