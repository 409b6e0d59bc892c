"""Quaternion norm forms, Albert forms, and residues of mod-2 symbols."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import Undetermined, UnsupportedEntry, ValidationError
from .fields.local import tame_symbol_sign
from .qform.engine import Status, is_isotropic
from .qform.form import DiagForm

UNKNOWN = "unknown"


def quaternion_norm_form(a, b, field) -> DiagForm:
    """<1, -a, -b, ab>: isotropic iff the quaternion algebra (a, b) splits."""
    a, b = field.element(a), field.element(b)
    return DiagForm(field, [field.one(), -a, -b, a * b])


def albert_form(a, b, c, d, field) -> DiagForm:
    """<-a, -b, ab, c, d, -cd> attached to (a, b) ⊗ (c, d)."""
    a, b, c, d = (field.element(x) for x in (a, b, c, d))
    return DiagForm(field, [-a, -b, a * b, c, d, -(c * d)])


@dataclass(frozen=True)
class DivisionResult:
    division: bool
    certificate: object  # a Verdict, or a report entry for Q_p(t)
    report: object = None

    def to_json(self):
        out = {"division": self.division}
        cert = self.certificate
        if hasattr(cert, "place"):
            out["certificate_place"] = str(cert.place)
            out["certificate"] = cert.to_json()
        else:
            out["certificate"] = cert.to_json()
        return out


def biquaternion_is_division(a, b, c, d, field, probes="auto") -> DivisionResult:
    """(a, b) ⊗ (c, d) is a division algebra iff its Albert form is anisotropic.

    Over Q_p(t) only anisotropy can be certified, via some completion; if every
    checked completion is isotropic the answer is Undetermined.
    """
    q = albert_form(a, b, c, d, field)
    if field.kind == "qpt":
        from .geometry.report import local_global_report
        rep = local_global_report(q, probes)
        aniso = rep.anisotropic_entries()
        if not aniso:
            raise Undetermined("no checked completion is anisotropic; global isotropy is not decided")
        return DivisionResult(True, aniso[0], rep)
    v = is_isotropic(q)
    if v.status is Status.UNSUPPORTED:
        raise Undetermined(v.detail.get("reason", "unsupported field"))
    return DivisionResult(v.anisotropic, v)


# --------------------------------------------------------------------------------
# symbols

class SymbolMod2:
    """(e_1) ∪ ... ∪ (e_n) in H^n(K, Z/2), entries reduced to square classes.

    Any square entry makes the symbol zero; the zero symbol keeps no entries.
    """

    __slots__ = ("field", "entries", "zero", "degree")

    def __init__(self, field, entries):
        entries = [field.element(e) for e in entries]
        if not 1 <= len(entries) <= 3:
            raise ValidationError("symbols have length 1 to 3")
        self.field = field
        self.degree = len(entries)
        self.zero = any(field.is_square(e) for e in entries)
        self.entries = () if self.zero else tuple(field.square_class(e) for e in entries)

    def __eq__(self, other):
        return (isinstance(other, SymbolMod2) and self.field == other.field
                and self.degree == other.degree and self.entries == other.entries
                and self.zero == other.zero)

    def __hash__(self):
        return hash((self.field, self.degree, self.entries))

    def __str__(self):
        if self.zero:
            return "0"
        return " ∪ ".join(f"({e})" for e in self.entries)

    __repr__ = __str__

    def to_json(self):
        return {"field": self.field.describe(), "degree": self.degree,
                "entries": [str(e) for e in self.entries], "zero": self.zero}


@dataclass(frozen=True)
class SymbolSum:
    """A formal sum of symbols of one degree over one field (the residue of a symbol).

    Degree 0 terms stand for the generator of H^0 = Z/2.
    """

    field: object
    degree: int
    terms: tuple

    def simplified(self) -> "SymbolSum":
        terms = [t for t in self.terms if not (isinstance(t, SymbolMod2) and t.zero)]
        if self.degree == 0:
            return SymbolSum(self.field, 0, ("1",) * (len(terms) % 2))
        if self.degree == 1 and terms:
            prod = self.field.one()
            for t in terms:
                prod = prod * t.entries[0]
            s = SymbolMod2(self.field, [prod])
            return SymbolSum(self.field, 1, () if s.zero else (s,))
        return SymbolSum(self.field, self.degree, tuple(terms))

    def as_symbol(self):
        s = self.simplified()
        if self.degree == 0:
            return len(s.terms)  # 0 or 1 in Z/2
        if not s.terms:
            return SymbolMod2.__new__(SymbolMod2)._zero_of(self.field, self.degree)
        if len(s.terms) == 1:
            return s.terms[0]
        return s

    def __str__(self):
        s = self.simplified()
        if not s.terms:
            return "0"
        return " + ".join(str(t) for t in s.terms)

    def to_json(self):
        s = self.simplified()
        return {"field": self.field.describe(), "degree": self.degree,
                "terms": [t if isinstance(t, str) else t.to_json() for t in s.terms]}


def _zero_of(self, field, degree):
    self.field, self.degree, self.zero, self.entries = field, degree, True, ()
    return self


SymbolMod2._zero_of = _zero_of


def zero_symbol(field, degree: int) -> SymbolMod2:
    return SymbolMod2.__new__(SymbolMod2)._zero_of(field, degree)


def _completion(field, place):
    """The complete field at ``place`` for a global field, or the field itself."""
    if hasattr(field, "split"):
        return field
    if field.kind == "ffz":
        return place
    if field.kind == "qpt":
        return place.completion()
    raise UnsupportedEntry(f"no places for {field.describe()}")


def symbol_residue(s: SymbolMod2, place=None) -> SymbolSum:
    """Residue of s at a discrete valuation, by multilinear expansion.

    Each entry is π^{e_i} u_i with e_i in {0, 1}.  A term taking (π) from k >= 1
    slots becomes (-1)^{k-1} ∪ (π) after (π)∪(π) = (-1)∪(π); its residue is the
    cup of (-1)^{k-1} with the residues of the remaining units.
    """
    K = _completion(s.field, place)
    R = K.residue_field
    n = s.degree
    if s.zero:
        return SymbolSum(R, n - 1, ())
    parts = []
    for e in s.entries:
        try:
            v, r = K.split(e)
        except Exception as exc:  # valuation not computable
            raise UnsupportedEntry(f"cannot localize {e}: {exc}") from None
        parts.append((v % 2, r))
    minus_one = -R.one()
    terms = []
    for choice in itertools.product((0, 1), repeat=n):
        if any(c and not parts[i][0] for i, c in enumerate(choice)):
            continue
        k = sum(choice)
        if k == 0:
            continue
        rest = [parts[i][1] for i, c in enumerate(choice) if not c]
        ents = [minus_one] * (k - 1) + rest
        if not ents:
            terms.append("1")
        else:
            terms.append(SymbolMod2(R, ents))
    return SymbolSum(R, n - 1, tuple(terms)).simplified()


def _hilbert_at(place, a, b) -> int:
    va, ua = place.split(a)
    vb, ub = place.split(b)
    return tuple_sign(va, ua, vb, ub)


def tuple_sign(va, ua, vb, ub) -> int:
    return tame_symbol_sign(va, ua, vb, ub)


def quaternion_sum_is_nontrivial(field, pairs) -> bool:
    """Σ (a_i, b_i) over F_p(z) is nonzero iff some local invariant is nonzero."""
    if field.kind != "ffz":
        raise ValidationError("sums of quaternion symbols are decided over F_p(z) only")
    els = [field.element(x) for ab in pairs for x in ab]
    for place in field.bad_places(els):
        prod = 1
        for a, b in pairs:
            prod *= _hilbert_at(place, field.element(a), field.element(b))
        if prod == -1:
            return True
    return False


def symbol_is_nontrivial(s, _depth: int = 0):
    """True / False, or "unknown" for length-3 symbols without a nontrivial residue."""
    if isinstance(s, SymbolSum):
        t = s.simplified()
        if not t.terms:
            return False
        if t.degree == 0:
            return True
        if len(t.terms) == 1:
            return symbol_is_nontrivial(t.terms[0], _depth)
        if t.degree == 2 and t.field.kind == "ffz":
            return quaternion_sum_is_nontrivial(t.field, [x.entries for x in t.terms])
        return UNKNOWN
    if s.zero:
        return False
    K = s.field
    if s.degree == 1:
        return True  # a nonzero square class
    if s.degree == 2:
        if K.kind in ("finite", "local", "ffz", "ffz-completion"):
            v = is_isotropic(quaternion_norm_form(s.entries[0], s.entries[1], K))
            return v.anisotropic
        return UNKNOWN
    # degree 3: look for a nontrivial residue
    if _depth > 2:
        return UNKNOWN
    for place in _candidate_places(s):
        r = symbol_residue(s, place)
        if symbol_is_nontrivial(r, _depth + 1) is True:
            return True
    return UNKNOWN


def _candidate_places(s: SymbolMod2):
    K = s.field
    if K.kind == "ffz":
        return K.bad_places(s.entries)
    if K.kind == "qpt":
        from .geometry.places import horizontal, infinity, special_fibre
        atoms = sorted({h for e in s.entries for h in e.atoms()})
        return [horizontal(h, K.p) for h in atoms] + [infinity(K.p), special_fibre(K.p)]
    if hasattr(K, "split"):
        return [None]
    return []
