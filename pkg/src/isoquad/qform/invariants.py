"""Isotropy over non-dyadic local fields from discriminant and Hasse invariant.

This is a second, independent route to the same answer as the Springer
recursion: it never looks at residue forms, only at Hilbert symbols.
"""

from __future__ import annotations

from ..fields.local import tame_symbol_sign
from .form import DiagForm


def hilbert(K, a, b) -> int:
    """(a, b) over a field with ``split`` and a finite residue field."""
    va, ua = K.split(a)
    vb, ub = K.split(b)
    return tame_symbol_sign(va, ua, vb, ub)


def hasse_invariant(q: DiagForm) -> int:
    K = q.field
    s = 1
    c = q.coeffs
    for i in range(len(c)):
        for j in range(i + 1, len(c)):
            s *= hilbert(K, c[i], c[j])
    return s


def discriminant(q: DiagForm):
    d = q.field.one()
    for c in q.coeffs:
        d = d * c
    return d


def classical_is_isotropic(q: DiagForm) -> bool:
    """Isotropy over Q_p, its quadratic extensions, or a completion of F_p(z)."""
    K = q.field
    n = q.rank
    if n <= 1:
        return False
    if n == 2:
        return K.is_square(-(q.coeffs[0] * q.coeffs[1]))
    if n >= 5:
        return True
    d = discriminant(q)
    s = hasse_invariant(q)
    minus_one = -K.one()
    if n == 3:
        return s == hilbert(K, minus_one, -d)
    if not K.is_square(d):
        return True
    return s == hilbert(K, minus_one, minus_one)
