"""Constructive zeros of diagonal forms, independent of the decision engine.

* finite fields: exhaustive enumeration of normalized vectors;
* Q_p: level-by-level search of primitive zeros mod p^k, Hensel-certified;
* F_p(z): Legendre descent for ternary forms over F_p[z], with small
  polynomial fillings of the extra coordinates for rank >= 4.

Nothing here calls ``is_isotropic``; the tests use these routines as oracles.
"""

from __future__ import annotations

import itertools
from math import gcd
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import BudgetExceeded, Unsupported
from ..fields.finite import (
    FiniteField, ff_is_square, ff_sqrt, padd, pdeg, pdivmod, peval, pgcd, pmod, pmonic, pmul,
    pnorm, pscale, psub, pxgcd, ptrim,
)
from ..fields.ffz import FFRatFunc
from ..fields.local import vp
from .form import DiagForm


# --------------------------------------------------------------------------------
# finite fields

def finite_search(q: DiagForm):
    """First zero with last nonzero coordinate 1, earlier coordinates varying fastest."""
    F = q.field
    n = q.rank
    c = q.coeffs
    for last in range(n - 1, -1, -1):
        for rev in itertools.product(list(F.elements()), repeat=last):
            x = rev[::-1] + (F.one(),) + (F.zero(),) * (n - last - 1)
            s = F.zero()
            for ci, xi in zip(c, x):
                s = s + ci * xi * xi
            if s.is_zero():
                return x
    return None


def square_table(F: FiniteField) -> list:
    return sorted({x * x for x in F.elements(nonzero=True)}, key=lambda e: e.index())


# --------------------------------------------------------------------------------
# Q_p: primitive zeros mod p^k

@dataclass(frozen=True)
class LocalSearchResult:
    status: str  # "witness" | "none" | "inconclusive"
    level: int
    witness: tuple | None = None
    note: str = ""

    def to_json(self):
        d = {"status": self.status, "level": self.level, "note": self.note}
        if self.witness is not None:
            d["witness"] = list(self.witness)
        return d


def _integer_coeffs(q: DiagForm) -> list[int]:
    K = q.field
    if K.kind != "local" or K.ext != "trivial":
        raise Unsupported("the mod p^k search handles Q_p only")
    vals = []
    for c in q.coeffs:
        if c.exact is None:
            raise Unsupported("coefficients must be known exactly")
        vals.append(Fraction(c.exact[0]))
    den = 1
    for v in vals:
        den = den * v.denominator // gcd(den, v.denominator)
    return [int(v * den) for v in vals]


def local_search(q: DiagForm, max_level: int = 8, max_states: int = 2_000_000) -> LocalSearchResult:
    """Search primitive zeros of q mod p^k for k = 1..max_level.

    Coefficients are first reduced to valuation 0 or 1 (and to 0 when every
    coefficient has odd valuation); the witness refers to the reduced form.  A zero x mod p^k is certified when 2*v(2*c_i*x_i) < k for
    some i (Hensel).
    "none" at level k proves anisotropy, because a p-adic zero scaled to be
    primitive reduces to a primitive zero mod every p^k.
    """
    p = q.field.p
    c = _integer_coeffs(q)
    n = len(c)
    # x_i -> x_i / p^k removes p^(2k) from c_i without changing isotropy
    vc = [vp(ci, p) % 2 for ci in c]
    if all(vc):
        vc = [0] * n  # scaling the whole form by 1/p does not change isotropy
    c = [ci // p ** (vp(ci, p) - v) for ci, v in zip(c, vc)]
    # states: rows of residues mod p^m, normalized so the first coordinate not
    # divisible by p equals 1 (classes of primitive vectors up to units)
    level = 1
    M = p
    states = []
    for j in range(n):
        rest = n - j - 1
        grid = np.array(list(itertools.product(range(p), repeat=rest)), dtype=np.int64).reshape(p ** rest, rest)
        block = np.zeros((grid.shape[0], n), dtype=np.int64)
        block[:, j] = 1
        block[:, j + 1:] = grid
        states.append(block)
    S = np.concatenate(states)
    # the lead index: columns before it are ≡ 0 mod p and frozen at multiples of p
    while True:
        S = S[_values(S, c, M) == 0]
        if S.shape[0] == 0:
            return LocalSearchResult("none", level, note=f"no primitive zero mod {p}^{level}")
        hit = _certified(S, c, vc, p, level)
        if hit is not None:
            return LocalSearchResult("witness", level, tuple(int(v) for v in hit),
                                     note=f"Hensel-certified at {p}^{level}")
        if level == max_level:
            return LocalSearchResult("inconclusive", level,
                                     note=f"{S.shape[0]} zeros mod {p}^{level}, none certified")
        # lift: x + p^level * d, keeping the lead coordinate equal to 1
        lead = np.argmax(S % p != 0, axis=1)
        digits = np.array(list(itertools.product(range(p), repeat=n)), dtype=np.int64)
        new = []
        for j in range(n):
            rows = S[lead == j]
            if rows.shape[0] == 0:
                continue
            d = digits[digits[:, j] == 0]
            new.append((rows[:, None, :] + M * d[None, :, :]).reshape(-1, n))
        S = np.concatenate(new)
        if S.shape[0] > max_states:
            return LocalSearchResult("inconclusive", level, note="state budget exhausted")
        level += 1
        M *= p


def _values(S, c, M):
    acc = np.zeros(S.shape[0], dtype=np.int64)
    for i, ci in enumerate(c):
        x = S[:, i] % M
        acc = (acc + (x * x % M) * (ci % M)) % M
    return acc


def _certified(S, c, vc, p, level):
    # 2*(v(c_i) + v(x_i)) < level  <=>  x_i is nonzero mod p^t, t = ceil(level/2 - v(c_i))
    ok = np.zeros(S.shape[0], dtype=bool)
    for i in range(len(c)):
        t = -((2 * vc[i] - level) // 2)
        if t >= 1:
            ok |= (S[:, i] % p ** t) != 0
    idx = np.flatnonzero(ok)
    return S[idx[0]] if idx.size else None


# --------------------------------------------------------------------------------
# F_p(z): Legendre descent over F_p[z]

class _Poly:
    """Small helpers on F_p[z] polynomials (int tuples) used by the descent."""

    def __init__(self, p):
        self.p = p

    def squarefree_split(self, g: FFRatFunc):
        """g = d * s^2 with d a squarefree polynomial; returns (d, s_num, s_den)."""
        p = self.p
        d = (g.const,)
        sn, sd = (1,), (1,)
        for f, e in g.factors:
            if e % 2:
                d = pmul(d, f, p)
            k = (e - (e % 2)) // 2
            if k > 0:
                sn = pmul(sn, _ppow(f, k, p), p)
            elif k < 0:
                sd = pmul(sd, _ppow(f, -k, p), p)
        return d, sn, sd


def _ppow(f, k, p):
    out = (1,)
    for _ in range(k):
        out = pmul(out, f, p)
    return out


def _factor(f, p):
    return FFRatFunc.from_poly(f, p)


def _sqrt_mod(a, pi, p):
    """r with r^2 ≡ a mod pi (pi monic irreducible), or None."""
    if pdeg(pi) == 1:
        root = (-pi[0]) % p
        F = FiniteField(p)
        v = F(peval(a, root, p))
        if v.is_zero():
            return (0,)
        if not ff_is_square(v):
            return None
        return pnorm((ff_sqrt(v).value[0],), p)
    F = FiniteField(p, pi)
    v = F(pmod(a, pi, p))
    if v.is_zero():
        return (0,)
    if not ff_is_square(v):
        return None
    return ptrim(ff_sqrt(v).value)


def _crt(residues, p):
    """Combine [(r_i, m_i)] with pairwise coprime moduli."""
    r, m = (0,), (1,)
    for ri, mi in residues:
        g, u, v = pxgcd(m, mi, p)
        # g = u*m + v*mi = const; normalize
        ginv = pow(g[0], -1, p)
        u, v = pscale(u, ginv, p), pscale(v, ginv, p)
        mm = pmul(m, mi, p)
        r = pmod(padd(pmul(pmul(r, v, p), mi, p), pmul(pmul(ri, u, p), m, p), p), mm, p)
        m = mm
    return r


def _sqfree_part(c, p):
    """c = lc * prod f^e  ->  (squarefree d, s) with c = d * s^2."""
    if pdeg(c) <= 0:
        return c, (1,)
    g = _factor(c, p)
    d, s = (g.const,), (1,)
    for f, e in g.factors:
        if e % 2:
            d = pmul(d, f, p)
        s = pmul(s, _ppow(f, e // 2, p), p)
    return d, s


def _is_poly_square(a, p):
    if not a:
        return None
    g = _factor(a, p)
    if any(e % 2 for _, e in g.factors) or pow(g.const, (p - 1) // 2, p) != 1:
        return None
    r = (ff_sqrt(FiniteField(p)(g.const)).value[0],)
    for f, e in g.factors:
        r = pmul(r, _ppow(f, e // 2, p), p)
    return r


def legendre_solve(a, b, p, depth: int = 0, max_depth: int = 64):
    """(X, Y, W) polys with X^2 = a*Y^2 + b*W^2, not all zero; a, b squarefree nonzero.

    Returns None when there is no solution.
    """
    if depth > max_depth:
        raise BudgetExceeded("descent too deep")
    a, b = pnorm(a, p), pnorm(b, p)
    if pdeg(a) > pdeg(b):
        sol = legendre_solve(b, a, p, depth + 1, max_depth)
        return None if sol is None else (sol[0], sol[2], sol[1])
    r = _is_poly_square(a, p)
    if r is not None:
        return (r, (1,), ())
    r = _is_poly_square(b, p)
    if r is not None:
        return (r, (), (1,))
    if pdeg(b) == 0:
        # both constants: the conic over F_p has a point
        F = FiniteField(p)
        A, B = F(a[0]), F(b[0])
        for y in F.elements():
            rhs = A * y * y + B
            if rhs.is_zero() or ff_is_square(rhs):
                x = ff_sqrt(rhs)
                return ((x.value[0],), (y.value[0],), (1,))
        raise AssertionError("conics over finite fields have points")
    # r^2 ≡ a mod b, factor by factor
    bf = _factor(b, p)
    parts = []
    for pi, _ in bf.factors:
        if pmod(a, pi, p) == ():
            parts.append(((0,), pi))
            continue
        s = _sqrt_mod(a, pi, p)
        if s is None:
            return None
        parts.append((s, pi))
    r = _crt(parts, p) if parts else (0,)
    r = pmod(r, b, p)
    num = psub(pmul(r, r, p), a, p)
    if not num:
        return (r, (1,), ())
    c, rem = pdivmod(num, b, p)
    assert not rem
    c2, s = _sqfree_part(c, p)
    sol = legendre_solve(a, c2, p, depth + 1, max_depth)
    if sol is None:
        return None
    X, Y, W = sol
    x = padd(pmul(X, r, p), pmul(a, Y, p), p)
    y = padd(X, pmul(r, Y, p), p)
    w = pmul(pmul(c2, s, p), W, p)
    return x, y, w


def _ternary(c1, c2, c3, p):
    """Zero of c1 x^2 + c2 y^2 + c3 w^2 with squarefree polynomial coefficients."""
    a0 = pscale(pmul(c1, c2, p), -1, p)
    b0 = pscale(pmul(c1, c3, p), -1, p)
    a1, g = _sqfree_part(a0, p)
    b1, h = _sqfree_part(b0, p)
    sol = legendre_solve(a1, b1, p)
    if sol is None:
        return None
    X, Y, W = sol
    return (pmul(pmul(X, g, p), h, p), pmul(pmul(Y, c1, p), h, p), pmul(pmul(W, c1, p), g, p))


def _small_polys(p, max_deg):
    yield (1,)
    for d in range(0, max_deg + 1):
        for coeffs in itertools.product(range(p), repeat=d + 1):
            if coeffs[-1] == 0 or (d == 0 and coeffs == (1,)):
                continue
            yield tuple(coeffs)


def ffz_search(q: DiagForm, max_degree: int = 8, fill_degree: int = 1):
    """A polynomial zero of q over F_p(z) of degree <= max_degree, or None."""
    p = q.field.p
    n = q.rank
    H = _Poly(p)
    split = [H.squarefree_split(c) for c in q.coeffs]
    d = [s[0] for s in split]
    sol = None
    if n == 2:
        ratio = FFRatFunc.constant(-1, p) * q.coeffs[1] / q.coeffs[0]
        if all(e % 2 == 0 for _, e in ratio.factors) and pow(ratio.const, (p - 1) // 2, p) == 1:
            root = FFRatFunc(p, ff_sqrt(FiniteField(p)(ratio.const)).value[0],
                             tuple((f, e // 2) for f, e in ratio.factors), validate=False)
            # x1 = root * x2 as polynomials: x2 = denominator
            sol = (root.numerator(), root.denominator())
    elif n >= 3:
        for idx in itertools.combinations(range(n), 3):
            t = _ternary(d[idx[0]], d[idx[1]], d[idx[2]], p)
            if t is not None:
                y = [()] * n
                for k, i in enumerate(idx):
                    y[i] = t[k]
                sol = _unscale(tuple(y), split, p)
                break
        if sol is None and n >= 4:
            sol = _fill_search(d, split, p, fill_degree)
    if sol is None:
        return None
    sol = _primitive(sol, p)
    if max(pdeg(x) for x in sol) > max_degree:
        return None
    assert ffz_evaluate_is_zero(q, sol), "descent produced a non-zero"
    return sol


def _fill_search(d, split, p, fill_degree):
    n = len(d)
    base = list(range(2))
    extra = list(range(2, n))
    for vals in itertools.product(list(_small_polys(p, fill_degree)), repeat=len(extra)):
        m = ()
        for i, s in zip(extra, vals):
            m = padd(m, pmul(d[i], pmul(s, s, p), p), p)
        if not m:
            continue
        m1, g = _sqfree_part(m, p)
        t = _ternary(d[base[0]], d[base[1]], m1, p)
        if t is None:
            continue
        # m * w^2 = m1 * (g w)^2, so the extra coordinates get s_i * W * ... carefully:
        # c1 x^2 + c2 y^2 + m1 W^2 = 0 and m1 W^2 = m (W/g)^2; clear g by scaling
        x0, x1, W = t
        y = [pmul(x0, g, p), pmul(x1, g, p)] + [pmul(s, W, p) for s in vals]
        return _unscale(tuple(y), split, p)
    return None


def _unscale(y, split, p):
    """Zero y of <d_i> -> zero x of <d_i s_i^2>, x_i = y_i / s_i, cleared to polynomials."""
    nums, dens = [], []
    for yi, (_, sn, sd) in zip(y, split):
        nums.append(pmul(yi, sd, p))
        dens.append(sn)
    L = (1,)
    for dn in dens:
        L = pmul(L, pdivmod(dn, pgcd(L, dn, p), p)[0], p)
    out = []
    for nm, dn in zip(nums, dens):
        out.append(pmul(nm, pdivmod(L, dn, p)[0], p))
    return tuple(out)


def _primitive(x, p):
    g = ()
    for xi in x:
        if xi:
            g = xi if not g else pgcd(g, xi, p)
    if not g:
        raise AssertionError("trivial vector")
    g = pmonic(g, p)
    return tuple(pdivmod(xi, g, p)[0] if xi else () for xi in x)


def ffz_evaluate_is_zero(q: DiagForm, x) -> bool:
    """sum c_i x_i^2 == 0 in F_p(z) for polynomial x, not all zero."""
    p = q.field.p
    if not any(x):
        return False
    den = (1,)
    for c in q.coeffs:
        dn = c.denominator()
        den = pmul(den, pdivmod(dn, pgcd(den, dn, p), p)[0], p)
    total = ()
    for c, xi in zip(q.coeffs, x):
        if not xi:
            continue
        cn = pmul(c.numerator(), pdivmod(den, c.denominator(), p)[0], p)
        total = padd(total, pmul(cn, pmul(xi, xi, p), p), p)
    return not total


def witness_degree(x) -> int:
    return max(pdeg(xi) for xi in x if xi)


# --------------------------------------------------------------------------------

def isotropy_witness_search(q: DiagForm, budget: int | None = None):
    """A verified nontrivial zero of q, or None within the budget.

    budget: mod-p^k level for Q_p (default 8), polynomial degree for F_p(z)
    (default 8).  Finite fields are searched exhaustively.
    """
    kind = q.field.kind
    if kind == "finite":
        return finite_search(q)
    if kind == "local":
        res = local_search(q, max_level=budget or 8)
        return res.witness if res.status == "witness" else None
    if kind == "ffz":
        return ffz_search(q, max_degree=budget or 8)
    raise Unsupported(f"no witness search over {q.field.describe()}")
