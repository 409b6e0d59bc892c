"""1 - x on y^2 = x(1-x)(x-p): a nonsquare in the function field, a square in every completion.

Completions are handled by a case split on the valuations of x, 1-x and x-p.
Each case is realized concretely inside a p-adic field k (Q_p or a quadratic
extension), where the same valuation argument runs; every side condition of the
argument is checked with exact or Hensel-certified arithmetic, and the
conclusion is compared against a direct square test in k.

Coordinates: ``a`` is the x-coordinate and ``b`` the y-coordinate of a point.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidPoint, ValidationError, ZeroInput
from .fields.finite import ff_is_square
from .fields.local import LocalElement, LocalField, lf_is_square, smallest_nonresidue
from .fields.qpt import FactoredRatFunc

BRANCHES = ("NegVal", "PosVal", "UnitXVanishes", "UnitResidualP", "ClosedPoint")


def _padd(f, g):
    n = max(len(f), len(g))
    f = list(f) + [0] * (n - len(f))
    g = list(g) + [0] * (n - len(g))
    out = [Fraction(a) + Fraction(b) for a, b in zip(f, g)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def _pneg(f):
    return tuple(-Fraction(c) for c in f)


def check_identities(p: int) -> bool:
    """x + (1-x) = 1,  x - (x-p) = p,  (1-x) + (x-p) = 1-p  as polynomials in x."""
    X, one_m_x, x_m_p = (0, 1), (1, -1), (-p, 1)
    ok = (_padd(X, one_m_x) == (1,)
          and _padd(X, _pneg(x_m_p)) == (p,)
          and _padd(one_m_x, x_m_p) == (1 - p,))
    if not ok:
        raise AssertionError("polynomial identities failed")
    return ok


check_identities(5)


# ------------------------------------------------------------------------------
# the global statement

def _factored(p: int, const, atoms) -> FactoredRatFunc:
    return FactoredRatFunc(p, const, 0, tuple(atoms), "x")


def cubic(p: int) -> FactoredRatFunc:
    """x(1-x)(x-p) = -x(x-1)(x-p)."""
    return _factored(p, -1, [((0, 1), 1), ((-1, 1), 1), ((-p, 1), 1)])


def one_minus_x(p: int) -> FactoredRatFunc:
    return _factored(p, -1, [((-1, 1), 1)])


def is_square_in_F(g: FactoredRatFunc) -> bool:
    """g in Q_p(x) is a square in F = Q_p(x)(sqrt(cubic)) iff g or g*cubic is a square in Q_p(x)."""
    return g.is_square() or (g * cubic(g.p)).is_square()


def one_minus_x_square_in_F(p: int) -> bool:
    if p % 2 == 0 or p < 3:
        raise ValidationError("p must be an odd prime")
    return is_square_in_F(one_minus_x(p))


# ------------------------------------------------------------------------------
# completion cases

@dataclass(frozen=True)
class _PointCase:
    k: LocalField
    a: LocalElement  # exact x-coordinate
    b: LocalElement  # Hensel-lifted y-coordinate

    def to_json(self):
        return {"branch": self.branch, "field": self.k.describe(), "a": str(self.a),
                "b": str(self.b)}


class NegVal(_PointCase):
    branch = "NegVal"


class PosVal(_PointCase):
    branch = "PosVal"


class UnitXVanishes(_PointCase):
    branch = "UnitXVanishes"


class UnitResidualP(_PointCase):
    branch = "UnitResidualP"


class ClosedPoint(_PointCase):
    """A closed point of E over Q_p with residue field k; 1 - x reduces to 1 - a."""

    branch = "ClosedPoint"


CASE_TYPES = {c.branch: c for c in (NegVal, PosVal, UnitXVanishes, UnitResidualP, ClosedPoint)}


def _check_point(case: _PointCase):
    k, a, b = case.k, case.a, case.b
    p = k.p
    if a.exact is None:
        raise InvalidPoint("the x-coordinate must be exact")
    for bad in (0, 1, p):
        if a.exact == k._exact(bad):
            raise InvalidPoint(f"x-coordinate {bad} is excluded")
    rhs = a * (1 - a) * (a - p)
    if not b * b == rhs:
        raise InvalidPoint(f"b^2 != a(1-a)(a-p) at precision {k.precision}")


def classify(k: LocalField, a: LocalElement) -> str:
    """Branch of the case split for the valuation of k at a point with x-coordinate a."""
    p = k.p
    w1 = (1 - a).val
    if w1 < 0:
        return "NegVal"
    if w1 > 0:
        return "PosVal"
    if a.val > 0 or (a - p).val > 0:
        return "UnitXVanishes"
    return "UnitResidualP"


class _Trace:
    def __init__(self):
        self.steps = []

    def check(self, claim: str, ok: bool):
        self.steps.append({"claim": claim, "ok": bool(ok)})
        if not ok:
            raise AssertionError(f"side condition failed: {claim}")


def _one_minus_p_square(k: LocalField, tr: _Trace):
    tr.check("1-p is a square in k", lf_is_square(k.element(1 - k.p)))


def _neg_val(case, tr):
    k, a = case.k, case.a
    w = a.val
    tr.check("w(x) < 0", w < 0)
    tr.check("w(x) = w(1-x) = w(x-p)", (1 - a).val == w == (a - k.p).val)
    tr.check("w(x) even, from 2w(y) = 3w(x)", w % 2 == 0 and 2 * case.b.val == 3 * w)
    u = a.unit_part()  # x = u / pi^(2n)
    tr.check("-u^3 is a square, so -u is a square", lf_is_square(-(u ** 3)) and lf_is_square(-u))
    num = k.element(k._uniformizer_power(-w)) - u  # 1 - x = (pi^2n - u) / pi^2n
    tr.check("pi^2n - u is a unit with the residue of -u",
             num.val == 0 and num.unit_residue() == (-u).unit_residue())
    tr.check("pi^2n - u is a square", ff_is_square(num.unit_residue()))
    return True


def _pos_val(case, tr):
    k, a = case.k, case.a
    p = k.p
    tr.check("w(1-x) > 0", (1 - a).val > 0)
    tr.check("w(x) = w(x-p) = 0", a.val == 0 and (a - p).val == 0)
    _one_minus_p_square(k, tr)
    tr.check("x = 1 - (1-x) has residue 1, a square", a.unit_residue() == k.one().unit_residue())
    tr.check("x - p = (1-p) - (1-x) has the residue of 1-p",
             (a - p).unit_residue() == k.element(1 - p).unit_residue())
    tr.check("x and x-p are squares", lf_is_square(a) and lf_is_square(a - p))
    tr.check("w(y) = w(1-x)/2, so 1-x = y^2 / (x(x-p))", 2 * case.b.val == (1 - a).val)
    return True


def _unit_x_vanishes(case, tr):
    k, a = case.k, case.a
    p = k.p
    tr.check("w(1-x) = 0", (1 - a).val == 0)
    if a.val > 0:
        tr.check("1-x = 1 - x has residue 1", (1 - a).unit_residue() == k.one().unit_residue())
        return True
    tr.check("w(x-p) > 0", (a - p).val > 0)
    _one_minus_p_square(k, tr)
    tr.check("1-x = (1-p) - (x-p) has the residue of 1-p",
             (1 - a).unit_residue() == k.element(1 - p).unit_residue())
    return True


def _unit_residual_p(case, tr):
    k, a = case.k, case.a
    p = k.p
    tr.check("w(x) = w(1-x) = w(x-p) = 0", a.val == (1 - a).val == (a - p).val == 0)
    tr.check("w(p) > 0", k.element(p).val > 0)
    xx = a * (a - p)
    tr.check("x(x-p) has the nonzero square residue of x^2",
             xx.unit_residue() == (a * a).unit_residue() and ff_is_square(xx.unit_residue()))
    tr.check("w(y) = 0, so 1-x = y^2 / (x(x-p)) is a square unit", case.b.val == 0)
    return True


_RULES = {"NegVal": _neg_val, "PosVal": _pos_val, "UnitXVanishes": _unit_x_vanishes,
          "UnitResidualP": _unit_residual_p}


@dataclass
class CompletionResult:
    square: bool
    branch: str
    depth: int
    trace: list
    direct: bool  # lf_is_square(1 - a) in k, computed independently

    def to_json(self):
        return {"square": self.square, "branch": self.branch, "depth": self.depth,
                "direct_check": self.direct, "trace": self.trace}


def one_minus_x_square_in_completion(case: _PointCase, p: int | None = None,
                                     _depth: int = 1) -> CompletionResult:
    """Whether 1 - x is a square in the completion described by ``case``, with the derivation."""
    if p is not None and p != case.k.p:
        raise ValidationError("case lives over a different prime")
    _check_point(case)
    tr = _Trace()
    if case.branch == "ClosedPoint":
        if _depth > 1:
            raise AssertionError("closed points only occur at the top level")
        sub_branch = classify(case.k, case.a)
        tr.check("w(p) > 0 in k", case.k.element(case.k.p).val > 0)
        tr.steps.append({"claim": f"1-x is a square in A_v iff 1-a is a square in k; "
                                  f"in k the point falls in branch {sub_branch}", "ok": True})
        sub = CASE_TYPES[sub_branch](case.k, case.a, case.b)
        r = one_minus_x_square_in_completion(sub, None, _depth + 1)
        return CompletionResult(r.square, "ClosedPoint", r.depth,
                                tr.steps + [{"sub": r.branch, "steps": r.trace}],
                                lf_is_square(1 - case.a))
    actual = classify(case.k, case.a)
    if actual != case.branch:
        raise InvalidPoint(f"point belongs to branch {actual}, not {case.branch}")
    square = _RULES[case.branch](case, tr)
    return CompletionResult(square, case.branch, _depth, tr.steps, lf_is_square(1 - case.a))


# ------------------------------------------------------------------------------
# sampling

def sample_fields(p: int, max_degree: int = 2) -> list[LocalField]:
    """Q_p, then the unramified and a ramified quadratic extension."""
    out = [LocalField(p)]
    if max_degree >= 2:
        out.append(LocalField(p, (-smallest_nonresidue(p), 0)))
        out.append(LocalField(p, (-p, 0)))
    return out


def _random_unit(k: LocalField, rng: random.Random, avoid=()):
    p = k.p
    while True:
        coords = tuple(Fraction(rng.randrange(p * p)) for _ in range(k.dim))
        if not any(coords):
            continue
        e = k.element(coords)
        if e.val == 0 and e.unit_residue() not in avoid:
            return e


def _random_a(k: LocalField, branch: str, rng: random.Random) -> LocalElement:
    p = k.p
    F = k.residue_field
    pi = lambda m: k.element(k._uniformizer_power(m))  # noqa: E731
    m = rng.randint(1, 4)
    if branch == "NegVal":
        return _random_unit(k, rng) * pi(-m)
    if branch == "PosVal":
        return 1 + _random_unit(k, rng) * pi(m)
    if branch == "UnitXVanishes":
        if rng.random() < 0.5:
            return _random_unit(k, rng) * pi(m)
        return p + _random_unit(k, rng) * pi(m)
    return _random_unit(k, rng, avoid=(F(0), F(1)))


def _point(k: LocalField, branch: str, rng: random.Random, tries: int = 200):
    for _ in range(tries):
        a = _random_a(k, branch, rng)
        if a.exact is None or classify(k, a) != branch:
            continue
        try:
            rhs = a * (1 - a) * (a - k.p)
        except ZeroInput:  # a landed on 0, 1 or p
            continue
        if lf_is_square(rhs):
            return a, rhs.sqrt()
    return None


def sample_closed_points(p: int, count: int, seed: int = 0, max_degree: int = 2) -> list[ClosedPoint]:
    """Seeded closed points (a, b) of E over Q_p and its quadratic extensions."""
    if count < 1:
        raise ValidationError("count must be at least 1")
    rng = random.Random(seed)
    fields = sample_fields(p, max_degree)
    out = []
    # a = 2 over Q_p first when it lies on the curve: 2(1-2)(2-p) = 2(p-2)
    k0 = fields[0]
    a0 = k0.element(2)
    if 2 != p and lf_is_square(a0 * (1 - a0) * (a0 - p)):
        out.append(ClosedPoint(k0, a0, (a0 * (1 - a0) * (a0 - p)).sqrt()))
    i = 0
    while len(out) < count and i < 20 * count:
        k = fields[i % len(fields)]
        inner = _RULES_ORDER[(i // len(fields)) % 4]
        i += 1
        pt = _point(k, inner, rng)
        if pt is not None:
            out.append(ClosedPoint(k, *pt))
    return out[:count]


_RULES_ORDER = ("UnitResidualP", "NegVal", "PosVal", "UnitXVanishes")


def sample_cases(p: int, count: int, seed: int = 0, max_degree: int = 2) -> list[_PointCase]:
    """Round-robin over all five branches; each case realized inside some k."""
    if count < 1:
        raise ValidationError("count must be at least 1")
    rng = random.Random(seed)
    fields = sample_fields(p, max_degree)
    out = []
    i = 0
    while len(out) < count and i < 20 * count:
        branch = BRANCHES[i % 5]
        k = fields[(i // 5) % len(fields)]
        i += 1
        if branch == "ClosedPoint":
            pt = _point(k, _RULES_ORDER[(i // 5) % 4], rng)
        else:
            pt = _point(k, branch, rng)
        if pt is not None:
            out.append(CASE_TYPES[branch](k, *pt))
    return out


@dataclass
class CurveReport:
    p: int
    square_in_F: bool
    results: list
    seed: int

    @property
    def all_square(self) -> bool:
        return all(r.square for _, r in self.results)

    def branch_counts(self) -> dict:
        out = {b: 0 for b in BRANCHES}
        for c, _ in self.results:
            out[c.branch] += 1
        return out

    def to_json(self):
        return {"schema": 1, "p": self.p, "seed": self.seed,
                "one_minus_x_square_in_F": self.square_in_F,
                "all_completions_square": self.all_square,
                "branch_counts": self.branch_counts(),
                "b_sign": "b is the Hensel lift of the finite-field square root of the residue; the verdict does not depend on the sign",
                "cases": [dict(c.to_json(), result=r.to_json()) for c, r in self.results]}


def curve_report(p: int, samples: int = 100, seed: int = 7) -> CurveReport:
    check_identities(p)
    cases = sample_cases(p, samples, seed)
    results = [(c, one_minus_x_square_in_completion(c, p)) for c in cases]
    return CurveReport(p, one_minus_x_square_in_F(p), results, seed)
