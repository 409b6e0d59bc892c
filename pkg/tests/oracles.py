"""Brute-force reference computations, independent of the library's own routines."""

import functools
import itertools

import numpy as np


def vp(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def squares_mod(p):
    return sorted({x * x % p for x in range(1, p)})


@functools.lru_cache(maxsize=None)
def _grid(m, p):
    r = np.arange(m, dtype=np.int64)
    X, Y, Z = (g.ravel() for g in np.meshgrid(r, r, r, indexing="ij"))
    return X, Y, Z, (X % p != 0) | (Y % p != 0) | (Z % p != 0)


def hilbert_bruteforce(a, b, p, k=3):
    """+1 / -1 / None from primitive zeros of z^2 - a x^2 - b y^2 mod p^k.

    +1 needs a zero that Hensel lifts (some coordinate i with v(2 c_i x_i) = d and
    k >= 2d + 1); -1 needs the complete absence of primitive zeros.
    """
    m = p ** k
    X, Y, Z, prim = _grid(m, p)
    val = (Z * Z - (a % m) * X * X % m - (b % m) * Y * Y % m) % m
    hit = prim & (val == 0)
    if not hit.any():
        return -1
    coeffs = (-a, -b, 1)
    for x, y, z in zip(X[hit], Y[hit], Z[hit]):
        for c, xi in zip(coeffs, (x, y, z)):
            if int(xi) % m == 0:
                continue
            d = vp(2 * c * int(xi), p) if int(xi) else k
            if k >= 2 * d + 1:
                return 1
    return None


def ff_poly_mul(f, g, p):
    out = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        for j, y in enumerate(g):
            out[i + j] = (out[i + j] + x * y) % p
    return tuple(out)


def brute_roots(f, p):
    return [x for x in range(p) if sum(c * pow(x, i, p) for i, c in enumerate(f)) % p == 0]


def finite_zero(coeffs, p):
    """First nonzero vector (lexicographic) with sum c_i x_i^2 = 0 over F_p."""
    for x in itertools.product(range(p), repeat=len(coeffs)):
        if any(x) and sum(c * xi * xi for c, xi in zip(coeffs, x)) % p == 0:
            return x
    return None
