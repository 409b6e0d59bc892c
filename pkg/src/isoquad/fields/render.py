"""Print field elements in terms of the symbols p and a (the chosen nonresidue).

Only used for display and for comparing against hand-written lists such as
``<-a,-p,ap,ap>``; arithmetic never goes through strings.
"""

from __future__ import annotations

from fractions import Fraction

from .ffz import FFRatFunc
from .finite import FFElem, poly_str
from .local import LocalElement, vp
from .qpt import FactoredRatFunc


def _const(x: Fraction, p: int, a: int, with_p: bool = True) -> tuple[str, str]:
    """(sign, body) of a rational constant as a^i p^k m."""
    sign = "-" if x < 0 else ""
    x = abs(Fraction(x))
    k = vp(x, p) if with_p else 0
    m = x / Fraction(p) ** k
    body = ""
    if m == a:
        body = "a"
    elif m != 1:
        body = str(m)
    if k == 1:
        body += "p"
    elif k:
        body += f"p^{k}"
    return sign, body


def _poly(h, var: str, p: int) -> str:
    """Integer atom with coefficients ±p written as p."""
    terms = []
    for i in range(len(h) - 1, -1, -1):
        c = h[i]
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        s, body = _const(Fraction(c), p, 0)
        if mono:
            body = mono if not body else f"{body}{mono}"
        elif not body:
            body = "1"
        terms.append((s or "+", body))
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for s, body in terms[1:]:
        out += s + body
    return out


def _join(sign, body, parts):
    text = body + "".join(parts)
    return sign + (text or "1")


def symbolic(x, p: int, a: int) -> str:
    if isinstance(x, LocalElement):
        if x.exact is not None and (len(x.exact) == 1 or x.exact[1] == 0):
            s, body = _const(x.exact[0], p, a)
            return s + (body or "1")
        return str(x)
    if isinstance(x, FactoredRatFunc):
        sign, body = _const(x.const * Fraction(p) ** x.pexp, p, a)
        parts = []
        for h, e in x.factors:
            s = _poly(h, x.var, p)
            if len([c for c in h if c]) > 1:
                s = f"({s})"
            parts.append(s if e == 1 else f"{s}^{e}")
        return _join(sign, body, parts)
    if isinstance(x, FFRatFunc):
        c = x.const if x.const <= p // 2 else x.const - p
        sign, body = _const(Fraction(c), p, a, with_p=False)
        parts = []
        for f, e in x.factors:
            s = poly_str(f, x.var, signed_p=p)
            if len([c for c in f if c]) > 1:
                s = f"({s})"
            parts.append(s if e == 1 else f"{s}^{e}")
        return _join(sign, body, parts)
    if isinstance(x, FFElem):
        if x.field.f == 1:
            v = x.value[0]
            v = v - p if v > p // 2 else v
            s, body = _const(Fraction(v), p, a, with_p=False)
            return s + (body or "1")
        return str(x)
    return str(x)


def drop_square_factors(x):
    """Reduce polynomial exponents mod 2, keeping the constant as is."""
    if isinstance(x, FFRatFunc):
        return FFRatFunc(x.p, x.const, tuple((f, e % 2) for f, e in x.factors if e % 2),
                         x.var, validate=False)
    if isinstance(x, FactoredRatFunc):
        return FactoredRatFunc(x.p, x.const, x.pexp,
                               tuple((h, e % 2) for h, e in x.factors if e % 2), x.var,
                               validate=False)
    return x


def symbolic_form(q, p: int, a: int, reduced: bool = False) -> str:
    f = drop_square_factors if reduced else (lambda c: c)
    return "<" + ",".join(symbolic(f(c), p, a) for c in q.coeffs) + ">"
