"""The pencil f + t*g of two diagonal forms over Q, and primitive zeros mod p^2."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import BudgetExceeded, DegenerateEntry, ValidationError
from ..fields.qpt import FactoredRatFunc, QptField, primitive_part
from ..qform.form import DiagForm


def _ints(form):
    if isinstance(form, DiagForm):
        return [Fraction(c.exact[0]) if hasattr(c, "exact") else Fraction(c) for c in form.coeffs]
    return [Fraction(c) for c in form]


def amer_brumer_pencil(f, g, p: int, var: str = "t") -> DiagForm:
    """<f_i + t*g_i> over Q_p(t) with factored coefficients."""
    f, g = _ints(f), _ints(g)
    if len(f) != len(g):
        raise ValidationError("f and g must have the same rank")
    coeffs = []
    for i, (a, b) in enumerate(zip(f, g)):
        if a == 0 and b == 0:
            raise DegenerateEntry(f"entry {i + 1}: f_i = g_i = 0")
        if b == 0:
            coeffs.append(FactoredRatFunc.constant(a, p, var))
        elif a == 0:
            coeffs.append(FactoredRatFunc(p, b, 0, (((0, 1), 1),), var))
        else:
            scalar, atom = primitive_part((a, b))
            coeffs.append(FactoredRatFunc(p, scalar, 0, ((atom, 1),), var))
    return DiagForm(QptField(p, var), coeffs)


@dataclass(frozen=True)
class PencilSearch:
    no_primitive_solution: bool
    mod_p_survivors: int
    vectors_checked: int
    witness: tuple | None = None

    def to_json(self):
        return {"no_primitive_solution": self.no_primitive_solution,
                "mod_p_survivors": self.mod_p_survivors,
                "vectors_checked": self.vectors_checked,
                "witness": list(self.witness) if self.witness else None}


def pencil_search(f, g, p: int) -> PencilSearch:
    """Exhaustive search for x in (Z/p^2)^n, x not ≡ 0 mod p, with f(x) ≡ g(x) ≡ 0 mod p^2.

    Vectors mod p that fail mod p are discarded before lifting.
    """
    f, g = _ints(f), _ints(g)
    n = len(f)
    if n > 6:
        raise BudgetExceeded(f"rank {n} > 6")
    if len(g) != n:
        raise ValidationError("f and g must have the same rank")
    m = p * p
    fi = np.array([int(c.numerator * pow(c.denominator, -1, m)) % m for c in f], dtype=np.int64)
    gi = np.array([int(c.numerator * pow(c.denominator, -1, m)) % m for c in g], dtype=np.int64)
    base = np.array(list(itertools.product(range(p), repeat=n)), dtype=np.int64)[1:]
    sq = base * base
    keep = ((sq @ (fi % p)) % p == 0) & ((sq @ (gi % p)) % p == 0)
    surv = base[keep]
    digits = np.array(list(itertools.product(range(p), repeat=n)), dtype=np.int64)
    checked = 0
    for row in surv:
        x = row[None, :] + p * digits
        x2 = x * x % m
        hit = ((x2 @ fi) % m == 0) & ((x2 @ gi) % m == 0)
        checked += x.shape[0]
        if hit.any():
            w = tuple(int(v) for v in x[np.flatnonzero(hit)[0]])
            return PencilSearch(False, int(surv.shape[0]), checked, w)
    return PencilSearch(True, int(surv.shape[0]), checked)


def pencil_no_primitive_solution(f, g, p: int) -> bool:
    return pencil_search(f, g, p).no_primitive_solution


def five_variable_pencil(p: int, u: int, s: int):
    """The pair (f, g) of the five-variable example, for p ≡ 1 mod 4 and u a nonresidue."""
    f = [1, u, p, u * p ** (2 * s), p ** (2 * s - 2)]
    g = [p ** (4 * s + 1), p ** (4 * s), u * p ** (2 * s), 1, p]
    return f, g
