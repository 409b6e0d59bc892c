"""The coefficient grammar: signed products such as ``-a*t*(p-t)`` or ``z^2-1``.

Reserved names: ``p`` (the prime), ``a`` and ``u`` (the canonical nonresidue),
and one coordinate (``t``, ``x`` or ``z``).  Each top-level factor of a
coefficient for Q_p(t) must be a constant or a single atom; it is never
factored further.
"""

from __future__ import annotations

import ast
from fractions import Fraction

from ..errors import ParseError
from .finite import pnorm
from .local import smallest_nonresidue
from .qpt import FactoredRatFunc, primitive_part

COORDS = ("t", "x", "z")


def _tree(text: str) -> ast.AST:
    src = text.strip().replace("^", "**").replace("−", "-")
    if not src:
        raise ParseError("empty coefficient")
    try:
        return ast.parse(src, mode="eval").body
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None


class _PolyEval:
    """Evaluate an expression to a polynomial with Fraction coefficients."""

    def __init__(self, p: int, var: str | None, a: int):
        self.p, self.var, self.a = p, var, a

    def __call__(self, node) -> tuple:
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return (Fraction(node.value),)
        if isinstance(node, ast.Name):
            if node.id == "p":
                return (Fraction(self.p),)
            if node.id in ("a", "u"):
                return (Fraction(self.a),)
            if node.id in COORDS:
                if self.var is None:
                    raise ParseError(f"coordinate {node.id!r} not allowed here")
                if node.id != self.var:
                    raise ParseError(f"coordinate {node.id!r} does not match {self.var!r}")
                return (Fraction(0), Fraction(1))
            raise ParseError(f"unknown symbol {node.id!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            f = self(node.operand)
            return tuple(-c for c in f) if isinstance(node.op, ast.USub) else f
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, (ast.Add, ast.Sub)):
                f, g = self(node.left), self(node.right)
                sign = 1 if isinstance(node.op, ast.Add) else -1
                n = max(len(f), len(g))
                return tuple((f[i] if i < len(f) else 0) + sign * (g[i] if i < len(g) else 0)
                             for i in range(n))
            if isinstance(node.op, ast.Mult):
                return _pmul(self(node.left), self(node.right))
            if isinstance(node.op, ast.Pow):
                k = _int_exponent(node.right)
                if k < 0:
                    raise ParseError("negative powers are only allowed on whole factors")
                out = (Fraction(1),)
                base = self(node.left)
                for _ in range(k):
                    out = _pmul(out, base)
                return out
            if isinstance(node.op, ast.Div):
                f, g = self(node.left), self(node.right)
                g = _ptrim(g)
                if len(g) != 1:
                    raise ParseError("division by a nonconstant inside a factor")
                return tuple(c / g[0] for c in f)
        raise ParseError(f"unsupported syntax: {ast.dump(node)[:60]}")


def _pmul(f, g):
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        for j, y in enumerate(g):
            out[i + j] += x * y
    return tuple(out)


def _ptrim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return tuple(f)


def _int_exponent(node) -> int:
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_int_exponent(node.operand)
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    raise ParseError("exponents must be integer literals")


def _factors(node, exp: int = 1, out=None):
    """Flatten top-level products, quotients, negations and powers into (node, exp)."""
    if out is None:
        out = []
    if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Mult):
        _factors(node.left, exp, out)
        _factors(node.right, exp, out)
    elif isinstance(node, ast.BinOp) and isinstance(node.op, ast.Div):
        _factors(node.left, exp, out)
        _factors(node.right, -exp, out)
    elif isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        out.append((ast.Constant(-1), 1))
        _factors(node.operand, exp, out)
    elif isinstance(node, ast.BinOp) and isinstance(node.op, ast.Pow):
        _factors(node.left, exp * _int_exponent(node.right), out)
    else:
        out.append((node, exp))
    return out


def detect_var(texts) -> str:
    found = set()
    for text in texts:
        for node in ast.walk(_tree(text)):
            if isinstance(node, ast.Name) and node.id in COORDS:
                found.add(node.id)
    if len(found) > 1:
        raise ParseError(f"several coordinates used: {sorted(found)}")
    return found.pop() if found else "t"


def parse_qpt(text: str, p: int, var: str = "t", a: int | None = None) -> FactoredRatFunc:
    """Parse a coefficient of Q_p(t) in factored-atom form."""
    a = smallest_nonresidue(p) if a is None else a
    ev = _PolyEval(p, var, a)
    out = FactoredRatFunc.constant(1, p, var)
    for node, exp in _factors(_tree(text)):
        poly = _ptrim(ev(node))
        if not poly:
            raise ParseError(f"factor of {text!r} is zero")
        if len(poly) == 1:
            out = out * FactoredRatFunc.constant(poly[0] ** exp, p, var)
            continue
        scalar, prim = primitive_part(poly)
        out = out * FactoredRatFunc(p, scalar ** exp, 0, ((prim, exp),), var)
    return out


def parse_rational(text: str, p: int, a: int | None = None) -> Fraction:
    """Parse a constant such as ``-a*p`` to a rational number."""
    a = smallest_nonresidue(p) if a is None else a
    poly = _ptrim(_PolyEval(p, None, a)(_tree(text)))
    if not poly:
        raise ParseError(f"{text!r} is zero")
    return poly[0]


def parse_ffz_poly(text: str, p: int, var: str = "z", a: int | None = None):
    """Parse an expression to a (possibly unfactored) rational function over F_p.

    Returns (numerator, denominator) polynomials reduced mod p.
    """
    a = smallest_nonresidue(p) if a is None else a
    ev = _PolyEval(p, var, a)
    num, den = (Fraction(1),), (Fraction(1),)
    for node, exp in _factors(_tree(text)):
        f = ev(node)
        for _ in range(abs(exp)):
            if exp > 0:
                num = _pmul(num, f)
            else:
                den = _pmul(den, f)

    def red(f):
        out = []
        for c in f:
            if c.denominator % p == 0:
                raise ParseError(f"{text!r} has a denominator divisible by {p}")
            out.append(c.numerator * pow(c.denominator, -1, p) % p)
        return pnorm(out, p)

    n, d = red(num), red(den)
    if not n or not d:
        raise ParseError(f"{text!r} vanishes mod {p}")
    return n, d


def split_list(text: str) -> list[str]:
    """Split a comma-separated coefficient list, respecting parentheses."""
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out
