"""Local-global reports: verdicts at the bad places of the base model and at probes."""

from __future__ import annotations

from dataclasses import dataclass, field as dfield

from ..errors import ValidationError
from ..fields.local import smallest_nonresidue
from ..fields.qpt import QptField, ipoly_key
from ..fields.render import symbolic_form
from ..qform.engine import Status, Verdict, is_isotropic
from ..qform.form import DiagForm, normalize
from .places import (
    COORDS, ChartMap, Place, horizontal, infinity, parse_chart, special_fibre,
    substitute_element,
)

SCHEMA = 1


def _atoms(q: DiagForm):
    seen = set()
    for c in q.coeffs:
        seen.update(c.atoms())
    return sorted(seen, key=ipoly_key)


def _chart_of(q: DiagForm) -> tuple:
    depth = COORDS.index(q.field.var)
    if depth:
        raise ValidationError("reports start from a form in the base coordinate t")
    return ()


def enumerate_bad_places(q: DiagForm, chart=()) -> list[Place]:
    """One horizontal place per atom, then infinity, then the special fibre."""
    p = q.field.p
    out = [horizontal(h, p, chart) for h in _atoms(q)]
    return out + [infinity(p, chart), special_fibre(p, chart)]


@dataclass(frozen=True)
class GoodPlaceRecord:
    applies: bool
    text: str

    def to_json(self):
        return {"applies": self.applies, "text": self.text}


def good_place_rule(q: DiagForm) -> GoodPlaceRecord:
    if q.rank >= 5:
        return GoodPlaceRecord(True, (
            f"at every unenumerated place all {q.rank} coefficients are units, so the unit "
            f"residue form has rank {q.rank} >= 5 over a p-adic field or F_p(x), hence is "
            "isotropic; the form is isotropic in that completion"))
    return GoodPlaceRecord(False, (
        f"rank {q.rank} < 5: isotropy at places outside the enumerated list is not "
        "established; the report is incomplete there"))


def substitute(q: DiagForm, chart, normalized: bool = True) -> DiagForm:
    """The form in the coordinate of ``chart`` (a ChartMap, a chain, or a spec string)."""
    p = q.field.p
    if isinstance(chart, str):
        chart = parse_chart(chart, p)
    elif isinstance(chart, ChartMap):
        chart = (chart,)
    chart = tuple(chart or ())
    depth = COORDS.index(q.field.var)
    coeffs = list(q.coeffs)
    for i, m in enumerate(chart):
        var = COORDS[depth + i + 1]
        coeffs = [substitute_element(c, m, var) if not c.is_constant() else c.with_var(var)
                  for c in coeffs]
    out = DiagForm(QptField(p, COORDS[depth + len(chart)]), coeffs)
    return normalize(out) if normalized else out


def _form_on(q: DiagForm, place: Place) -> DiagForm:
    if place.chart:
        q = substitute(q, place.chart)
    return DiagForm(place.completion(), q.coeffs)


def completion_verdict(q: DiagForm, place: Place):
    """(chain, verdict) for q over the completion at ``place``."""
    v = is_isotropic(_form_on(q, place))
    return v.chain(), v


@dataclass
class ReportEntry:
    place: Place
    role: str  # "base" | "probe"
    verdict: Verdict
    a: int

    def residue_forms(self):
        d = self.verdict.decomposition
        return (d.q1, d.q2) if d is not None else None

    def to_json(self):
        p = self.place.p
        d = {"place": self.place.to_json(), "role": self.role,
             "form": symbolic_form(self.verdict.form, p, self.a),
             "status": self.verdict.status.value, "rule": self.verdict.rule}
        dec = self.verdict.decomposition
        if dec is not None:
            d["uniformizer"] = dec.uniformizer
            d["residue_field"] = dec.residue_field.describe()
            d["q1"] = symbolic_form(dec.q1, p, self.a, reduced=True)
            d["q2"] = symbolic_form(dec.q2, p, self.a, reduced=True)
            d["q1_raw"] = symbolic_form(dec.q1, p, self.a)
            d["q2_raw"] = symbolic_form(dec.q2, p, self.a)
        d["chain"] = self.verdict.chain()
        return d


@dataclass
class LocalGlobalReport:
    header: dict
    entries: list
    good_place: GoodPlaceRecord
    probes: list
    summary: dict = dfield(default_factory=dict)

    def anisotropic_entries(self):
        return [e for e in self.entries if e.verdict.anisotropic]

    def entry(self, place: Place) -> ReportEntry:
        for e in self.entries:
            if e.place == place:
                return e
        raise KeyError(str(place))

    def to_json(self):
        return {"schema": SCHEMA, "header": self.header,
                "entries": [e.to_json() for e in self.entries],
                "good_places": self.good_place.to_json(),
                "probes": [[m.spec() for m in ch] for ch in self.probes],
                "summary": self.summary}


def auto_probes(q: DiagForm) -> list[tuple]:
    """Charts t = c + p*x at every F_p-point where some atom meets the special fibre.

    A closed point at infinity (an atom whose leading coefficient is divisible by
    p) is probed through t = 1/x followed by x = p*y.  Closed points with residue
    field larger than F_p are not probed.
    """
    p = q.field.p
    centres = set()
    at_inf = False
    for h in _atoms(q):
        for c in range(p):
            if sum(a * c ** i for i, a in enumerate(h)) % p == 0:
                centres.add(c)
        if h[-1] % p == 0:
            at_inf = True
    charts = [(ChartMap("affine", c),) for c in sorted(centres)]
    if at_inf:
        charts.append((ChartMap("inverse"), ChartMap("affine", 0)))
    return charts


def local_global_report(q: DiagForm, probes="auto", a: int | None = None) -> LocalGlobalReport:
    if not isinstance(q.field, QptField):
        raise ValidationError("local-global reports need a form over Q_p(t)")
    _chart_of(q)
    p = q.field.p
    a = smallest_nonresidue(p) if a is None else a
    if probes == "auto":
        charts = auto_probes(q)
    else:
        charts = [parse_chart(s, p) if isinstance(s, str) else tuple(s) for s in probes]
    entries = []
    for place in enumerate_bad_places(q):
        _, v = completion_verdict(q, place)
        entries.append(ReportEntry(place, "base", v, a))
    for ch in charts:
        place = special_fibre(p, ch)
        _, v = completion_verdict(q, place)
        entries.append(ReportEntry(place, "probe", v, a))
    good = good_place_rule(q)
    header = {"p": p, "a": a, "a_rule": "smallest positive quadratic nonresidue mod p",
              "form": symbolic_form(q, p, a), "form_raw": str(q), "rank": q.rank}
    rep = LocalGlobalReport(header, entries, good, charts)
    rep.summary = summarize(rep)
    return rep


def summarize(rep: LocalGlobalReport) -> dict:
    base = [e for e in rep.entries if e.role == "base"]
    aniso = rep.anisotropic_entries()
    unsupported = [e for e in rep.entries if e.verdict.status is Status.UNSUPPORTED]
    base_iso = all(e.verdict.isotropic for e in base)
    out = {
        "base_places_isotropic": base_iso,
        "good_place_rule": rep.good_place.applies,
        "anisotropy_certificate": str(aniso[0].place) if aniso else None,
        "unsupported": [str(e.place) for e in unsupported],
    }
    if aniso:
        text = f"anisotropic over F (certified by the completion at {aniso[0].place})"
        if base_iso and rep.good_place.applies:
            text += ", isotropic at all codimension-1 places of the base model"
    elif base_iso and rep.good_place.applies:
        text = "locally isotropic at all checked places (global isotropy not decided)"
    else:
        text = "no anisotropy certificate; some places unchecked or not isotropic"
        if not rep.good_place.applies:
            text += " (incomplete over unenumerated places)"
    out["text"] = text
    return out


def replay_report(q: DiagForm, data: dict) -> bool:
    """Recompute every entry of a JSON report and compare field by field."""
    p = q.field.p
    for e in data["entries"]:
        pl = e["place"]
        chart = parse_chart("/".join(pl["chart"]), p) if pl["chart"] else ()
        if pl["kind"] == "Horizontal":
            match = [h for h in _atoms(substitute(q, chart) if chart else q)
                     if ReportEntry(horizontal(h, p, chart), "", None, 0).place.to_json() == pl]
            place = horizontal(match[0], p, chart)
        elif pl["kind"] == "Infinity":
            place = infinity(p, chart)
        else:
            place = special_fibre(p, chart)
        _, v = completion_verdict(q, place)
        fresh = ReportEntry(place, e["role"], v, data["header"]["a"]).to_json()
        if fresh != e:
            return False
    return True
