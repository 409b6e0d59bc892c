"""Finite fields F_p and F_p[θ]/(m), and polynomial arithmetic over F_p.

Polynomials over F_p are tuples of ints in ``range(p)``, lowest degree first,
with no trailing zeros; ``()`` is the zero polynomial.
"""

from __future__ import annotations

import random
from functools import cached_property, lru_cache

from ..errors import ValidationError, ZeroInput

Poly = tuple


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_odd_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise ValidationError(f"{p!r} is not a prime")
    if p == 2:
        raise ValidationError("dyadic fields are not supported (p must be odd)")
    return p


def _factor_int(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# polynomials over F_p

def ptrim(f) -> Poly:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return tuple(f)


def pnorm(f, p: int) -> Poly:
    return ptrim(c % p for c in f)


def pdeg(f: Poly) -> int:
    return len(f) - 1 if f else -1


def padd(f: Poly, g: Poly, p: int) -> Poly:
    n = max(len(f), len(g))
    return ptrim(((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p
                 for i in range(n))


def pneg(f: Poly, p: int) -> Poly:
    return tuple((-c) % p for c in f)


def psub(f: Poly, g: Poly, p: int) -> Poly:
    return padd(f, pneg(g, p), p)


def pscale(f: Poly, c: int, p: int) -> Poly:
    return ptrim((c * x) % p for x in f)


def pmul(f: Poly, g: Poly, p: int) -> Poly:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return ptrim(c % p for c in out)


def pdivmod(f: Poly, g: Poly, p: int) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    inv = pow(g[-1], -1, p)
    q = [0] * max(len(f) - dg, 0)
    for i in range(len(f) - 1, dg - 1, -1):
        c = r[i] * inv % p
        if c:
            q[i - dg] = c
            for j in range(dg + 1):
                r[i - dg + j] = (r[i - dg + j] - c * g[j]) % p
    return ptrim(q), ptrim(r[:dg])


def pmod(f: Poly, g: Poly, p: int) -> Poly:
    return pdivmod(f, g, p)[1]


def pmonic(f: Poly, p: int) -> Poly:
    if not f:
        return f
    return pscale(f, pow(f[-1], -1, p), p)


def pgcd(f: Poly, g: Poly, p: int) -> Poly:
    while g:
        f, g = g, pmod(f, g, p)
    return pmonic(f, p)


def pxgcd(f: Poly, g: Poly, p: int):
    """Return (d, s, t) with s*f + t*g = d monic."""
    r0, r1 = f, g
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        q, r = pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1, p), p)
        t0, t1 = t1, psub(t0, pmul(q, t1, p), p)
    if not r0:
        return (), (), ()
    inv = pow(r0[-1], -1, p)
    return pscale(r0, inv, p), pscale(s0, inv, p), pscale(t0, inv, p)


def ppowmod(f: Poly, e: int, m: Poly, p: int) -> Poly:
    result: Poly = (1,)
    base = pmod(f, m, p)
    while e:
        if e & 1:
            result = pmod(pmul(result, base, p), m, p)
        base = pmod(pmul(base, base, p), m, p)
        e >>= 1
    return pmod(result, m, p)


def pderiv(f: Poly, p: int) -> Poly:
    return ptrim((i * f[i]) % p for i in range(1, len(f)))


def peval(f: Poly, x: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def ppow(f: Poly, e: int, p: int) -> Poly:
    out: Poly = (1,)
    for _ in range(e):
        out = pmul(out, f, p)
    return out


def pcompose(f: Poly, g: Poly, p: int) -> Poly:
    """f(g(z))."""
    out: Poly = ()
    for c in reversed(f):
        out = padd(pmul(out, g, p), (c % p,) if c % p else (), p)
    return out


X: Poly = (0, 1)


def is_irreducible(f: Poly, p: int) -> bool:
    """Rabin-style test for a polynomial of positive degree."""
    n = pdeg(f)
    if n <= 0:
        return False
    if n == 1:
        return True
    f = pmonic(f, p)
    h = X
    for _ in range(n // 2):
        h = ppowmod(h, p, f, p)
        if pdeg(pgcd(f, psub(h, X, p), p)) > 0:
            return False
    return True


def _squarefree(f: Poly, p: int) -> list[tuple[Poly, int]]:
    """Squarefree decomposition of a monic polynomial (Yun, char-p aware)."""
    if pdeg(f) <= 0:
        return []
    out = []
    d = pderiv(f, p)
    if not d:
        # f = g(z^p); coefficients of F_p are their own p-th roots
        g = tuple(f[i] for i in range(0, len(f), p))
        return [(h, m * p) for h, m in _squarefree(g, p)]
    c = pgcd(f, d, p)
    w = pdivmod(f, c, p)[0]
    i = 1
    while pdeg(w) > 0:
        y = pgcd(w, c, p)
        z = pdivmod(w, y, p)[0]
        if pdeg(z) > 0:
            out.append((pmonic(z, p), i))
        i += 1
        w = y
        c = pdivmod(c, y, p)[0]
    if pdeg(c) > 0:
        g = tuple(c[i] for i in range(0, len(c), p))
        out.extend((h, m * p) for h, m in _squarefree(g, p))
    return out


def _ddf(f: Poly, p: int) -> list[tuple[Poly, int]]:
    out = []
    h = X
    i = 0
    while pdeg(f) >= 2 * (i + 1):
        i += 1
        h = ppowmod(h, p, f, p)
        g = pgcd(f, psub(h, X, p), p)
        if pdeg(g) > 0:
            out.append((g, i))
            f = pdivmod(f, g, p)[0]
            h = pmod(h, f, p)
    if pdeg(f) > 0:
        out.append((f, pdeg(f)))
    return out


def _edf(f: Poly, d: int, p: int, rng: random.Random) -> list[Poly]:
    n = pdeg(f)
    if n == d:
        return [f]
    e = (p ** d - 1) // 2
    while True:
        a = ptrim(rng.randrange(p) for _ in range(n))
        if pdeg(a) <= 0:
            continue
        g = pgcd(f, a, p)
        if 0 < pdeg(g) < n:
            break
        b = psub(ppowmod(a, e, f, p), (1,), p)
        g = pgcd(f, b, p)
        if 0 < pdeg(g) < n:
            break
    return _edf(g, d, p, rng) + _edf(pdivmod(f, g, p)[0], d, p, rng)


def poly_key(f: Poly):
    """Canonical ordering: by degree, then coefficients from the top."""
    return (len(f), tuple(reversed(f)))


@lru_cache(maxsize=4096)
def _factor_monic(f: Poly, p: int) -> tuple[tuple[Poly, int], ...]:
    rng = random.Random(hash((f, p)) & 0xFFFFFFFF)
    found: dict[Poly, int] = {}
    for sq, m in _squarefree(f, p):
        for g, d in _ddf(sq, p):
            for h in _edf(g, d, p, rng):
                h = pmonic(h, p)
                found[h] = found.get(h, 0) + m
    return tuple(sorted(found.items(), key=lambda it: poly_key(it[0])))


def ffp_factorize(f, p: int) -> list[tuple[Poly, int]]:
    """Factor a monic nonconstant polynomial over F_p into monic irreducibles.

    Squarefree split, distinct-degree split, then Cantor-Zassenhaus
    equal-degree splitting.  Returns ``[(irreducible, multiplicity), ...]``
    in canonical order.
    """
    f = pnorm(f, p)
    if pdeg(f) < 1:
        raise ValidationError("ffp_factorize needs a nonconstant polynomial")
    if f[-1] != 1:
        raise ValidationError("ffp_factorize needs a monic polynomial")
    return list(_factor_monic(f, p))


def poly_str(f: Poly, var: str = "z", signed_p: int | None = None) -> str:
    """Render a polynomial; with ``signed_p`` coefficients print in (-p/2, p/2]."""
    if not f:
        return "0"
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if signed_p and c > signed_p // 2:
            c -= signed_p
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        s += f"{sign}{body}"
    return s


# ---------------------------------------------------------------------------
# finite fields

class FiniteField:
    """F_p (``modulus=None``) or F_p[θ]/(modulus) for a monic irreducible modulus."""

    kind = "finite"

    def __init__(self, p: int, modulus=None, symbol: str = "θ"):
        self.p = check_odd_prime(p)
        if modulus is None or pdeg(pnorm(modulus, p)) == 1:
            modulus = None
            self.f = 1
        else:
            modulus = pnorm(modulus, p)
            if modulus[-1] != 1:
                raise ValidationError("field modulus must be monic")
            if not is_irreducible(modulus, p):
                raise ValidationError(f"modulus {poly_str(modulus)} is reducible mod {p}")
            self.f = pdeg(modulus)
        self.modulus = modulus
        self.q = p ** self.f
        self.symbol = symbol

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash(("FF", self.p, self.modulus))

    def __repr__(self):
        if self.f == 1:
            return f"FiniteField({self.p})"
        return f"FiniteField({self.p}, {self.modulus})"

    def describe(self) -> str:
        if self.f == 1:
            return f"F_{self.p}"
        return f"F_{self.q} = F_{self.p}[{self.symbol}]/({poly_str(self.modulus, self.symbol)})"

    def to_json(self):
        return {"kind": "finite", "p": self.p, "modulus": list(self.modulus) if self.modulus else None}

    # element construction -------------------------------------------------
    def __call__(self, value) -> "FFElem":
        if isinstance(value, FFElem):
            if value.field != self:
                raise ValidationError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FFElem(self, self._reduce((value,)))
        return FFElem(self, self._reduce(tuple(value)))

    element = __call__

    def _reduce(self, poly) -> tuple:
        poly = pnorm(poly, self.p)
        if self.modulus is not None:
            poly = pmod(poly, self.modulus, self.p)
        return tuple(poly) + (0,) * (self.f - len(poly))

    def zero(self) -> "FFElem":
        return FFElem(self, (0,) * self.f)

    def one(self) -> "FFElem":
        return self(1)

    def from_index(self, n: int) -> "FFElem":
        digits = []
        for _ in range(self.f):
            n, r = divmod(n, self.p)
            digits.append(r)
        return FFElem(self, tuple(digits))

    def elements(self, nonzero: bool = False):
        for n in range(1 if nonzero else 0, self.q):
            yield self.from_index(n)

    def is_square(self, x: "FFElem") -> bool:
        return ff_is_square(self(x))

    def square_class(self, x: "FFElem") -> "FFElem":
        x = self(x)
        if x.is_zero():
            raise ZeroInput("zero has no square class")
        return self.one() if ff_is_square(x) else self.nonsquare

    @cached_property
    def nonsquare(self) -> "FFElem":
        """The first nonsquare in enumeration order."""
        for x in self.elements(nonzero=True):
            if not ff_is_square(x):
                return x
        raise AssertionError("unreachable for odd q")

    @cached_property
    def generator(self) -> "FFElem":
        primes = _factor_int(self.q - 1)
        for x in self.elements(nonzero=True):
            if all(x ** ((self.q - 1) // r) != self.one() for r in primes):
                return x
        raise AssertionError("no primitive element found")

    def squares(self) -> set:
        return {(x * x).value for x in self.elements(nonzero=True)}


class FFElem:
    __slots__ = ("field", "value")

    def __init__(self, field: FiniteField, value: tuple):
        self.field = field
        self.value = value

    def _coerce(self, other) -> "FFElem":
        if isinstance(other, FFElem):
            if other.field != self.field:
                raise ValidationError("mixing elements of different finite fields")
            return other
        if isinstance(other, int):
            return self.field(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not any(self.value)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        return isinstance(other, FFElem) and self.field == other.field and self.value == other.value

    def __hash__(self):
        return hash((self.field, self.value))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FFElem(self.field, tuple((a + b) % p for a, b in zip(self.value, other.value)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FFElem(self.field, tuple((-a) % p for a in self.value))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FFElem(self.field, self.field._reduce(pmul(ptrim(self.value), ptrim(other.value), self.field.p)))

    __rmul__ = __mul__

    def inverse(self) -> "FFElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if self.field.f == 1:
            return FFElem(self.field, (pow(self.value[0], e, self.field.p),))
        return FFElem(self.field, self.field._reduce(
            ppowmod(ptrim(self.value), e, self.field.modulus, self.field.p)))

    def index(self) -> int:
        return sum(c * self.field.p ** i for i, c in enumerate(self.value))

    def __repr__(self):
        return f"FFElem({self})"

    def __str__(self):
        if self.field.f == 1:
            v, p = self.value[0], self.field.p
            return str(v - p if v > p // 2 else v)
        return poly_str(ptrim(self.value), self.field.symbol)


def ff_is_square(x: FFElem) -> bool:
    """Euler's criterion x^((q-1)/2) = 1."""
    if x.is_zero():
        raise ZeroInput("ff_is_square is undefined at zero")
    return x ** ((x.field.q - 1) // 2) == x.field.one()


def ff_sqrt(x: FFElem) -> FFElem:
    """A square root of a square (Tonelli-Shanks)."""
    F = x.field
    if x.is_zero():
        return x
    if not ff_is_square(x):
        raise ValidationError(f"{x} is not a square in {F.describe()}")
    q = F.q
    s, m = 0, q - 1
    while m % 2 == 0:
        s += 1
        m //= 2
    z = F.nonsquare
    c = z ** m
    r = x ** ((m + 1) // 2)
    t = x ** m
    while t != F.one():
        i, t2 = 0, t
        while t2 != F.one():
            t2 = t2 * t2
            i += 1
        b = c ** (2 ** (s - i - 1))
        r, c = r * b, b * b
        t, s = t * c, i
    return r
