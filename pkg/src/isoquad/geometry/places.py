"""Places of Q_p(t) as codimension-1 points on charts of P^1 over Z_p.

A chart is a chain (length <= 2) of substitutions ``t = c + p*x`` or ``t = 1/x``;
coordinates along a chain are named t, x, y.  On each chart a place is a
horizontal atom, the point at infinity, or the special fibre (Gauss valuation).
"""

from __future__ import annotations

import re

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..errors import AtomFactorizationFailure, UnsupportedPlace, ValidationError
from ..fields.ffz import FFRatField, FFRatFunc
from ..fields.local import LocalField, vp
from ..fields.qpt import (
    FactoredRatFunc, QptField, ideg, ipoly_key, ipoly_str, primitive_part, taylor_shift,
    validate_atom,
)

COORDS = ("t", "x", "y")


@dataclass(frozen=True)
class ChartMap:
    """``affine``: previous = c + p*new;  ``inverse``: previous = 1/new."""

    kind: str
    c: int = 0

    def __post_init__(self):
        if self.kind not in ("affine", "inverse"):
            raise ValidationError(f"unknown chart map {self.kind!r}")

    def spec(self) -> str:
        return "inf" if self.kind == "inverse" else str(self.c)

    def render(self, src: str, dst: str, p: int) -> str:
        if self.kind == "inverse":
            return f"{src}=1/{dst}"
        return f"{src}={p}{dst}" if self.c == 0 else f"{src}={self.c}+{p}{dst}"


_WRITTEN = re.compile(r"[a-z]=(?:(?P<inv>1/[a-z])|(?:(?P<c>\d+)\+)?(?P<p>\d+)\*?[a-z])")


def parse_chart(spec: str, p: int) -> tuple:
    """'0' -> (t = p x);  'inf' -> (t = 1/x);  'inf/0' -> two steps.

    Written maps are accepted too: 't=5x', 't=2+5x', 't=1/x', chained with ';'.
    """
    out = []
    parts = spec.split(";") if "=" in spec else spec.split("/")
    for part in parts:
        part = part.replace(" ", "")
        m = _WRITTEN.fullmatch(part)
        if m:
            if m["inv"]:
                part = "inf"
            else:
                if int(m["p"]) != p:
                    raise ValidationError(f"chart {part!r} does not use p = {p}")
                part = m["c"] or "0"
        if part == "inf":
            out.append(ChartMap("inverse"))
        else:
            try:
                c = int(part)
            except ValueError:
                raise ValidationError(f"bad chart step {part!r}") from None
            if not 0 <= c < p:
                raise ValidationError(f"chart centre {c} not in 0..{p - 1}")
            out.append(ChartMap("affine", c))
    if len(out) > 2:
        raise UnsupportedPlace("chart chains have length at most 2")
    return tuple(out)


def chart_var(chart) -> str:
    return COORDS[len(chart)]


@lru_cache(maxsize=4096)
def _map_atom(h: tuple, kind: str, c: int, p: int):
    """Image of atom h under one chart map: (scalar, x-exponent, new atom or None)."""
    if kind == "affine":
        poly = taylor_shift(h, c, p)
        xexp = 0
    else:
        # h(1/x) = x^(-deg h) * rev(h)(x)
        rev = tuple(reversed(h))
        xexp = -ideg(h)
        k = 0
        while rev[k] == 0:
            k += 1
        rev = rev[k:]
        xexp += k
        poly = rev
    scalar, prim = primitive_part(poly)
    if len(prim) == 1:
        return scalar * prim[0], xexp, None
    try:
        prim = validate_atom(prim, p)
    except (ValidationError, UnsupportedPlace) as exc:
        raise AtomFactorizationFailure(f"image of {ipoly_str(h)} is not an atom: {exc}") from None
    return scalar, xexp, prim


def substitute_element(g: FactoredRatFunc, m: ChartMap, var: str) -> FactoredRatFunc:
    p = g.p
    out = FactoredRatFunc(p, g.const, g.pexp, (), var, validate=False)
    X = (0, 1)
    for h, e in g.factors:
        scalar, xexp, atom = _map_atom(h, m.kind, m.c, p)
        facs = []
        if xexp:
            facs.append((X, xexp * e))
        if atom is not None:
            facs.append((atom, e))
        out = out * FactoredRatFunc(p, Fraction(scalar) ** e, 0, tuple(facs), var)
    return out


def to_chart(g: FactoredRatFunc, chart) -> FactoredRatFunc:
    """Express a base-chart function in the coordinate of ``chart``."""
    if g.is_constant():
        return g.with_var(chart_var(chart))
    depth = COORDS.index(g.var)
    for i, m in enumerate(chart[depth:], start=depth):
        g = substitute_element(g, m, COORDS[i + 1])
    return g


@dataclass(frozen=True)
class Place:
    p: int
    kind: str  # "horizontal" | "infinity" | "special"
    atom: tuple | None = None
    chart: tuple = ()

    def __post_init__(self):
        if self.kind not in ("horizontal", "infinity", "special"):
            raise ValidationError(f"unknown place kind {self.kind!r}")
        if self.kind == "horizontal":
            object.__setattr__(self, "atom", validate_atom(self.atom, self.p))
        if len(self.chart) > 2:
            raise UnsupportedPlace("chart chains have length at most 2")

    @property
    def var(self) -> str:
        return chart_var(self.chart)

    def chart_str(self) -> str:
        if not self.chart:
            return "base"
        return ", ".join(m.render(COORDS[i], COORDS[i + 1], self.p) for i, m in enumerate(self.chart))

    def sort_key(self):
        rank = {"horizontal": 0, "infinity": 1, "special": 2}[self.kind]
        chart = tuple((m.kind, m.c) for m in self.chart)
        return (len(self.chart), chart, rank, ipoly_key(self.atom) if self.atom else ())

    def __str__(self):
        if self.kind == "horizontal":
            base = f"({ipoly_str(self.atom, self.var)})"
        elif self.kind == "infinity":
            base = f"(1/{self.var})"
        else:
            base = f"({self.p})"
        return base if not self.chart else f"{base} on chart {self.chart_str()}"

    def label(self) -> str:
        return {"horizontal": "Horizontal", "infinity": "Infinity", "special": "SpecialFibre"}[self.kind]

    def to_json(self):
        return {"kind": self.label(), "atom": ipoly_str(self.atom, self.var) if self.atom else None,
                "chart": [m.spec() for m in self.chart], "name": str(self)}

    def completion(self) -> "QptCompletion":
        return QptCompletion(self)


def _horizontal_residue_field(h: tuple, p: int):
    """Residue field Q_p(root of h) and the root in its coordinates."""
    if len(h) == 2:
        return LocalField(p), (Fraction(-h[0], h[1]),)
    c, b, a = h
    D = b * b - 4 * a * c
    k = vp(D, p) // 2
    Dp = Fraction(D, p ** (2 * k))
    if Dp.denominator != 1:
        raise AssertionError("integer discriminant")
    Dp = int(Dp)
    K = LocalField(p, (-Dp, 0))
    # root = (-b + p^k sqrt(D')) / (2a)
    return K, (Fraction(-b, 2 * a), Fraction(p ** k, 2 * a))


def _eval_exact(K: LocalField, h: tuple, x: tuple) -> tuple:
    acc = K._exact(0)
    for coef in reversed(h):
        acc = K.exact_mul(acc, x)
        acc = tuple(a + (Fraction(coef) if i == 0 else 0) for i, a in enumerate(acc))
    return acc


@dataclass(frozen=True)
class Localized:
    val: int
    residue: object  # LocalElement or FFRatFunc


def qrf_localize(g: FactoredRatFunc, place: Place) -> Localized:
    """Valuation of g at the place and the residue of g * uniformizer^(-v)."""
    p = place.p
    g = to_chart(g, place.chart)
    if place.kind == "special":
        c = g.const
        r = FFRatFunc.constant(c.numerator * pow(c.denominator, -1, p), p, place.var)
        for h, e in g.factors:
            r = r * FFRatFunc.from_poly(tuple(x % p for x in h), p, place.var) ** e
        return Localized(g.pexp, r)
    if place.kind == "infinity":
        v = 0
        val = g.const * Fraction(p) ** g.pexp
        for h, e in g.factors:
            v -= ideg(h) * e
            val *= Fraction(h[-1]) ** e
        return Localized(v, LocalField(p).element(val))
    h0 = place.atom
    K, root = _horizontal_residue_field(h0, p)
    acc = K._exact(g.const * Fraction(p) ** g.pexp)
    v = 0
    for h, e in g.factors:
        if h == h0:
            v = e
            continue
        val = _eval_exact(K, h, root)
        if not any(val):
            raise AssertionError("distinct atoms share a root")
        if e < 0:
            val = K.exact_inv(val)
        for _ in range(abs(e)):
            acc = K.exact_mul(acc, val)
    return Localized(v, K.element(acc))


class QptCompletion:
    """The completion of Q_p(t) at a Place; elements are base-chart functions."""

    kind = "qpt-completion"

    def __init__(self, place: Place):
        self.place = place
        self.p = place.p

    def __eq__(self, other):
        return isinstance(other, QptCompletion) and self.place == other.place

    def __hash__(self):
        return hash(("QptCompletion", self.place))

    def __str__(self):
        return str(self.place)

    def describe(self) -> str:
        return f"completion of Q_{self.p}(t) at {self.place}"

    def to_json(self):
        return {"kind": self.kind, "place": self.place.to_json()}

    @property
    def residue_field(self):
        pl = self.place
        if pl.kind == "special":
            return FFRatField(self.p, pl.var)
        if pl.kind == "infinity":
            return LocalField(self.p)
        return _horizontal_residue_field(pl.atom, self.p)[0]

    def uniformizer_str(self) -> str:
        pl = self.place
        if pl.kind == "special":
            return str(self.p)
        if pl.kind == "infinity":
            return f"1/{pl.var}"
        return ipoly_str(pl.atom, pl.var)

    def one(self) -> FactoredRatFunc:
        return FactoredRatFunc.constant(1, self.p)

    def element(self, x) -> FactoredRatFunc:
        if isinstance(x, FactoredRatFunc):
            return x
        return FactoredRatFunc.constant(x, self.p)

    def split(self, g):
        loc = qrf_localize(self.element(g), self.place)
        return loc.val, loc.residue

    def is_square(self, g) -> bool:
        v, r = self.split(g)
        return v % 2 == 0 and self.residue_field.is_square(r)

    def square_class(self, g):
        return self.element(g).square_class()


def horizontal(atom, p: int, chart=()) -> Place:
    return Place(p, "horizontal", tuple(atom), tuple(chart))


def infinity(p: int, chart=()) -> Place:
    return Place(p, "infinity", None, tuple(chart))


def special_fibre(p: int, chart=()) -> Place:
    return Place(p, "special", None, tuple(chart))


def base_field(p: int, chart=()) -> QptField:
    return QptField(p, chart_var(chart))
