"""Diagonal quadratic forms over any field object implementing the field protocol."""

from __future__ import annotations

from ..errors import ValidationError, ZeroInput


def _is_zero(x) -> bool:
    z = getattr(x, "is_zero", None)
    return bool(z()) if callable(z) else False


class DiagForm:
    """<c_1, ..., c_n> over ``field``; every coefficient nonzero.

    Rank 0 is only allowed for residue forms (``allow_empty=True``).
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs, allow_empty: bool = False):
        out = []
        for c in coeffs:
            try:
                e = field.element(c)
            except ZeroInput:
                raise ValidationError("a diagonal form needs nonzero coefficients") from None
            if _is_zero(e):
                raise ValidationError("a diagonal form needs nonzero coefficients")
            out.append(e)
        if not out and not allow_empty:
            raise ValidationError("a diagonal form has rank at least 1")
        self.field = field
        self.coeffs = tuple(out)

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __eq__(self, other):
        return isinstance(other, DiagForm) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"DiagForm({self.field.describe()}, {self})"

    def __str__(self):
        return "<" + ", ".join(str(c) for c in self.coeffs) + ">"

    def scaled(self, c) -> "DiagForm":
        c = self.field.element(c)
        return DiagForm(self.field, [c * x for x in self.coeffs], allow_empty=True)

    def perp(self, other: "DiagForm") -> "DiagForm":
        """Orthogonal sum q ⊥ r."""
        if other.field != self.field:
            raise ValidationError("orthogonal sum of forms over different fields")
        return DiagForm(self.field, self.coeffs + other.coeffs, allow_empty=True)

    __add__ = perp

    def permuted(self, order) -> "DiagForm":
        return DiagForm(self.field, [self.coeffs[i] for i in order], allow_empty=True)

    def to_json(self):
        return {"field": self.field.to_json(), "coefficients": [str(c) for c in self.coeffs]}


def normalize(q: DiagForm) -> DiagForm:
    """Replace every coefficient by its canonical square-class representative."""
    return DiagForm(q.field, [q.field.square_class(c) for c in q.coeffs], allow_empty=True)


def field_from_json(d: dict):
    from ..fields.ffz import FFRatField
    from ..fields.finite import FiniteField
    from ..fields.local import LocalField
    from ..fields.qpt import QptField

    kind = d["kind"]
    if kind == "local":
        poly = d.get("poly")
        return LocalField(d["p"], tuple(poly) if poly else None, d.get("precision"))
    if kind == "finite":
        if d.get("modulus"):
            return FiniteField(d["p"], tuple(d["modulus"]))
        return FiniteField(d["p"])
    if kind == "ffz":
        return FFRatField(d["p"], d.get("var", "z"))
    if kind == "qpt":
        return QptField(d["p"], d.get("var", "t"))
    raise ValidationError(f"cannot rebuild a field of kind {kind!r}")


def form_from_json(d: dict) -> DiagForm:
    """Inverse of ``DiagForm.to_json`` for Q_p, F_p, F_p(z) and Q_p(t)."""
    from ..fields.ffz import FFRatFunc
    from ..fields.parse import parse_ffz_poly, parse_qpt, parse_rational

    F = field_from_json(d["field"])
    out = []
    for s in d["coefficients"]:
        if F.kind == "local":
            if F.ext != "trivial":
                raise ValidationError("only Q_p coefficients round-trip through strings")
            out.append(F.element(parse_rational(s, F.p)))
        elif F.kind == "finite":
            v = parse_rational(s, F.p)
            out.append(F(v.numerator * pow(v.denominator, -1, F.p)))
        elif F.kind == "ffz":
            num, den = parse_ffz_poly(s, F.p, F.var)
            out.append(FFRatFunc.from_poly(num, F.p, F.var) / FFRatFunc.from_poly(den, F.p, F.var))
        else:
            out.append(parse_qpt(s, F.p, F.var))
    return DiagForm(F, out)
