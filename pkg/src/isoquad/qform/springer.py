"""Residue decompositions of diagonal forms.

One parameter: over a complete discretely valued field, split the entries by
valuation parity and reduce the unit parts.  Two parameters: at a closed point
(p, x) of a model over Z_p, group the coefficients of a form over Q(t) by the
parities of their x- and p-exponents.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import NonNormalCrossings, ValidationError
from ..fields.qpt import FactoredRatFunc, QptField, ieval, ipoly_str, validate_atom
from .form import DiagForm


@dataclass(frozen=True)
class ResidueDecomposition:
    field: object
    uniformizer: str
    q1: DiagForm
    q2: DiagForm
    even: tuple  # positions of the input entries feeding q1
    odd: tuple
    valuations: tuple

    @property
    def residue_field(self):
        return self.q1.field

    def to_json(self):
        return {
            "uniformizer": self.uniformizer,
            "residue_field": self.residue_field.describe(),
            "valuations": list(self.valuations),
            "q1": str(self.q1),
            "q2": str(self.q2),
        }


def springer_decompose(q: DiagForm) -> ResidueDecomposition:
    """q = <π^{2k_i} b_i> ⊥ π<π^{2l_j} c_j>  ->  (<b̄_i>, <c̄_j>) over the residue field."""
    K = q.field
    if not hasattr(K, "split"):
        raise ValidationError(f"{K.describe()} is not a complete discretely valued field")
    R = K.residue_field
    b, c, even, odd, vals = [], [], [], [], []
    for i, coeff in enumerate(q.coeffs):
        v, r = K.split(coeff)
        vals.append(v)
        if v % 2 == 0:
            b.append(r)
            even.append(i)
        else:
            c.append(r)
            odd.append(i)
    return ResidueDecomposition(
        K, K.uniformizer_str(),
        DiagForm(R, b, allow_empty=True), DiagForm(R, c, allow_empty=True),
        tuple(even), tuple(odd), tuple(vals))


@dataclass(frozen=True)
class TwoParamDecomposition:
    """q = q1 ⊥ x.q2 ⊥ y.q3 ⊥ xy.q4 with unit coefficients at the point (y = p)."""

    point: tuple  # (c, atom x): t ≡ c mod p and x(c) ≡ 0 mod p
    q1: DiagForm
    q2: DiagForm
    q3: DiagForm
    q4: DiagForm
    groups: tuple  # input positions of each group

    def forms(self):
        return (self.q1, self.q2, self.q3, self.q4)

    def residues(self):
        """Reduce every unit to the residue field F_p of the point."""
        from ..fields.finite import FiniteField
        c, _ = self.point
        F = FiniteField(self.q1.field.p)
        out = []
        for form in self.forms():
            out.append(DiagForm(F, [F(_unit_value(g, c)) for g in form.coeffs], allow_empty=True))
        return tuple(out)

    def to_json(self):
        c, x = self.point
        var = self.q1.field.var
        return {"point": {"c": c, "x": ipoly_str(x, var)},
                "q1": str(self.q1), "q2": str(self.q2), "q3": str(self.q3), "q4": str(self.q4)}


def _unit_value(g: FactoredRatFunc, c: int) -> int:
    p = g.p
    acc = g.const.numerator * pow(g.const.denominator, -1, p) % p
    for h, e in g.factors:
        r = ieval(h, c) % p
        acc = acc * pow(r, e, p) % p
    return acc


def two_param_decompose(q: DiagForm, c: int, x=None) -> TwoParamDecomposition:
    """Split a form over Q(t) at the closed point t ≡ c (mod p) with parameters (x, p).

    ``x`` defaults to the atom t - c.  Every other atom must be a unit at the
    point; otherwise the form does not have normal crossings there.
    """
    K = q.field
    if not isinstance(K, QptField):
        raise ValidationError("two-parameter splits need a form over Q_p(t)")
    p = K.p
    c %= p
    x = validate_atom((-c, 1) if x is None else x, p)
    if ieval(x, c) % p:
        raise ValidationError(f"{ipoly_str(x, K.var)} does not vanish at the point")
    dx = sum(i * a * c ** (i - 1) for i, a in enumerate(x) if i)
    if dx % p == 0:
        raise ValidationError(f"{ipoly_str(x, K.var)} is not a local parameter at the point")
    groups = {(0, 0): [], (1, 0): [], (0, 1): [], (1, 1): []}
    units = {key: [] for key in groups}
    for pos, g in enumerate(q.coeffs):
        i = g.exponent(x)
        for h, e in g.factors:
            if h != x and ieval(h, c) % p == 0:
                raise NonNormalCrossings(
                    f"coefficient {g} is not a monomial times a unit at the point "
                    f"({p}, {ipoly_str(x, K.var)}): {ipoly_str(h, K.var)} vanishes there",
                    offending=g)
        key = (i % 2, g.pexp % 2)
        unit = FactoredRatFunc(p, g.const, 0, tuple((h, e) for h, e in g.factors if h != x),
                               g.var, validate=False)
        groups[key].append(pos)
        units[key].append(unit)
    order = [(0, 0), (1, 0), (0, 1), (1, 1)]
    forms = [DiagForm(K, units[k], allow_empty=True) for k in order]
    return TwoParamDecomposition((c, x), *forms, tuple(tuple(groups[k]) for k in order))
