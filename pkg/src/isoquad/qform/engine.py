"""The recursive isotropy decision procedure and its certificates.

Decision rules by field kind:

* finite: rank >= 3 isotropic, rank 2 iff -c1*c2 is a square, rank <= 1 anisotropic;
* complete discretely valued (local, ffz-completion, qpt-completion): Springer,
  q isotropic iff one of the residue forms is;
* F_p(z): rank 2 by a global square test, ranks 3 and 4 by Hasse-Minkowski over
  the places dividing some coefficient plus infinity, rank >= 5 isotropic;
* Q_p(t): not decided.

Anisotropic verdicts carry their full derivation, which ``replay`` re-checks
from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield
from enum import Enum

from ..errors import IsoquadError, ZeroInput
from .form import DiagForm
from .springer import ResidueDecomposition, springer_decompose

DVF_KINDS = ("local", "ffz-completion", "qpt-completion")
# non-dyadic local fields, F_p(z) and its completions all have u-invariant 4
U4_KINDS = ("local", "ffz", "ffz-completion")


class Status(str, Enum):
    ISOTROPIC = "isotropic"
    ANISOTROPIC = "anisotropic"
    UNSUPPORTED = "unsupported"


class CertificateError(IsoquadError):
    """A recorded derivation step does not re-verify."""


@dataclass(frozen=True, eq=False)
class Verdict:
    status: Status
    form: DiagForm
    rule: str
    detail: dict = dfield(default_factory=dict)
    children: tuple = ()
    decomposition: ResidueDecomposition | None = None
    witness: tuple | None = None
    place: object = None

    @property
    def isotropic(self) -> bool:
        return self.status is Status.ISOTROPIC

    @property
    def anisotropic(self) -> bool:
        return self.status is Status.ANISOTROPIC

    def __bool__(self):
        raise TypeError("use .isotropic / .anisotropic; a verdict may be unsupported")

    def chain(self) -> list[dict]:
        """Depth-first list of steps: decompositions, place choices, terminal facts."""
        out = []
        self._walk(out, 0)
        return out

    def _walk(self, out, depth):
        step = {"depth": depth, "rule": self.rule, "field": self.form.field.describe(),
                "form": str(self.form), "status": self.status.value}
        if self.place is not None:
            step["place"] = str(self.place)
        if self.decomposition is not None:
            step.update({"uniformizer": self.decomposition.uniformizer,
                         "q1": str(self.decomposition.q1), "q2": str(self.decomposition.q2)})
        step.update(self.detail)
        out.append(step)
        for ch in self.children:
            ch._walk(out, depth + 1)

    def terminal_facts(self) -> list[dict]:
        return [s for s in self.chain() if s["rule"] in TERMINAL_RULES]

    def to_json(self):
        d = {"status": self.status.value, "rule": self.rule, "field": self.form.field.describe(),
             "form": str(self.form)}
        if self.detail:
            d["detail"] = dict(self.detail)
        if self.place is not None:
            d["place"] = str(self.place)
        if self.decomposition is not None:
            d["decomposition"] = self.decomposition.to_json()
        if self.witness is not None:
            d["witness"] = [str(w) for w in self.witness]
        if self.children:
            d["children"] = [ch.to_json() for ch in self.children]
        return d

    def summary(self) -> str:
        return f"{self.status.value} ({self.rule}) {self.form} over {self.form.field.describe()}"


TERMINAL_RULES = ("empty", "rank-one", "rank-two-nonsquare", "global-nonsquare")


def _iso(q, rule, **kw):
    return Verdict(Status.ISOTROPIC, q, rule, **kw)


def _aniso(q, rule, **kw):
    return Verdict(Status.ANISOTROPIC, q, rule, **kw)


def _hyperbolic_pair(q: DiagForm):
    for i, a in enumerate(q.coeffs):
        for j in range(i + 1, len(q.coeffs)):
            if q.coeffs[j] == -a:
                return i, j
    return None


def _unit_vector(n, idx, F):
    return tuple(F.one() if k in idx else 0 for k in range(n))


def is_isotropic(q: DiagForm, shortcuts: bool = True) -> Verdict:
    """Decide isotropy of ``q`` over its field.

    With ``shortcuts=False`` the rank >= 5 rule and the hyperbolic-pair test are
    skipped, so the verdict comes from the bare recursion.
    """
    kind = q.field.kind
    n = q.rank
    if n == 0:
        return _aniso(q, "empty")
    if n == 1:
        return _aniso(q, "rank-one")
    if kind == "finite":
        return _finite(q)
    if shortcuts:
        pair = _hyperbolic_pair(q)
        if pair is not None:
            return _iso(q, "hyperbolic-pair", witness=_unit_vector(n, pair, q.field),
                        detail={"pair": list(pair)})
        if n >= 5 and kind in U4_KINDS:
            return _iso(q, "rank-at-least-5", detail={"u_invariant": 4})
    if kind in DVF_KINDS:
        return _springer(q, shortcuts)
    if kind == "ffz":
        return _ffz_global(q, shortcuts)
    if kind == "qpt":
        return Verdict(Status.UNSUPPORTED, q, "global-qpt",
                       detail={"reason": "isotropy over Q_p(t) itself is not decided; "
                                         "use a completion"})
    return Verdict(Status.UNSUPPORTED, q, "unknown-field", detail={"reason": f"field kind {kind}"})


def _finite(q: DiagForm) -> Verdict:
    F = q.field
    c = q.coeffs
    if q.rank == 2:
        d = -(c[0] * c[1])
        if not F.is_square(d):
            return _aniso(q, "rank-two-nonsquare", detail={"value": str(d)})
        # c1 s^2 + c2 = 0 with s^2 = -c2/c1
        from ..fields.finite import ff_sqrt
        s = ff_sqrt(-(c[1] / c[0]))
        return _iso(q, "rank-two-square", witness=(s, F.one()), detail={"value": str(d)})
    return _iso(q, "finite-rank-at-least-3", witness=finite_witness(q))


def finite_witness(q: DiagForm):
    """A nontrivial zero of a rank >= 3 (or isotropic rank-2) form over a finite field."""
    from ..fields.finite import ff_sqrt
    F = q.field
    c = q.coeffs
    n = q.rank
    if n == 2:
        d = -(c[1] / c[0])
        return (ff_sqrt(d), F.one()) if F.is_square(d) else None
    # c1 x^2 + c2 y^2 = -c3
    for x in F.elements():
        rhs = (-(c[2]) - c[0] * x * x) / c[1]
        if rhs.is_zero() or F.is_square(rhs):
            y = ff_sqrt(rhs)
            return (x, y, F.one()) + (F.zero(),) * (n - 3)
    raise AssertionError("a ternary form over a finite field is isotropic")


def _springer(q: DiagForm, shortcuts: bool) -> Verdict:
    dec = springer_decompose(q)
    v1 = is_isotropic(dec.q1, shortcuts)
    if v1.isotropic:
        return _iso(q, "springer", decomposition=dec, children=(v1,), detail={"via": "q1"})
    v2 = is_isotropic(dec.q2, shortcuts)
    if v2.isotropic:
        return _iso(q, "springer", decomposition=dec, children=(v1, v2), detail={"via": "q2"})
    if v1.status is Status.UNSUPPORTED or v2.status is Status.UNSUPPORTED:
        return Verdict(Status.UNSUPPORTED, q, "springer", decomposition=dec, children=(v1, v2))
    return _aniso(q, "springer", decomposition=dec, children=(v1, v2))


def _ffz_global(q: DiagForm, shortcuts: bool) -> Verdict:
    K = q.field
    if q.rank == 2:
        d = -(q.coeffs[0] * q.coeffs[1])
        if K.is_square(d):
            return _iso(q, "global-square", detail={"value": str(d)})
        return _aniso(q, "global-nonsquare", detail={"value": str(d)})
    places = K.bad_places(q.coeffs)
    checked = []
    for place in places:
        local = DiagForm(place, q.coeffs)
        v = is_isotropic(local, shortcuts)
        checked.append(str(place))
        if v.anisotropic:
            return _aniso(q, "hasse-minkowski", children=(
                Verdict(v.status, v.form, v.rule, v.detail, v.children, v.decomposition,
                        v.witness, place),),
                detail={"places_checked": checked}, place=place)
    return _iso(q, "hasse-minkowski", detail={"places_checked": checked})


# --------------------------------------------------------------------------------
# replay

def replay(v: Verdict) -> bool:
    """Re-verify every step of a derivation independently of the engine's control flow.

    Raises CertificateError on the first step that does not reproduce.
    """
    q = v.form
    F = q.field
    r = v.rule
    if r == "empty":
        _need(q.rank == 0, "empty form has nonzero rank")
    elif r == "rank-one":
        _need(q.rank == 1, "rank-one step on a form of rank != 1")
    elif r in ("rank-two-nonsquare", "global-nonsquare"):
        _need(q.rank == 2, "rank-two step on a form of rank != 2")
        _need(not F.is_square(-(q.coeffs[0] * q.coeffs[1])), f"-c1*c2 is a square in {F.describe()}")
    elif r in ("rank-two-square", "global-square"):
        _need(F.is_square(-(q.coeffs[0] * q.coeffs[1])), f"-c1*c2 is not a square in {F.describe()}")
    elif r == "finite-rank-at-least-3":
        _need(F.kind == "finite" and q.rank >= 3, "rank rule misapplied")
    elif r == "hyperbolic-pair":
        i, j = v.detail["pair"]
        _need(q.coeffs[i] == -q.coeffs[j], "recorded pair is not hyperbolic")
    elif r == "rank-at-least-5":
        _need(q.rank >= 5 and F.kind in U4_KINDS, "rank >= 5 rule misapplied")
    elif r == "springer":
        dec = springer_decompose(q)
        _need(dec.q1 == v.decomposition.q1 and dec.q2 == v.decomposition.q2,
              "residue forms do not reproduce")
        kids = list(v.children)
        _need(kids[0].form == dec.q1, "first child is not q1")
        if len(kids) > 1:
            _need(kids[1].form == dec.q2, "second child is not q2")
        if v.anisotropic:
            _need(len(kids) == 2 and all(k.anisotropic for k in kids), "a residue form is not anisotropic")
        else:
            _need(kids[-1].isotropic, "the cited residue form is not isotropic")
    elif r == "hasse-minkowski":
        if v.anisotropic:
            (k,) = v.children
            _need(k.anisotropic, "cited place is not anisotropic")
            _need(k.form == DiagForm(k.form.field, q.coeffs), "completion form does not match")
            _need(k.form.field.p == F.p, "place of another field")
        else:
            # every bad place must have been checked
            want = [str(pl) for pl in F.bad_places(q.coeffs)]
            _need(v.detail.get("places_checked") == want, "bad places not all checked")
    elif v.status is Status.UNSUPPORTED:
        pass
    else:
        raise CertificateError(f"unknown rule {r!r}")
    if v.witness is not None and F.kind == "finite":
        _need(evaluate(q, v.witness) == 0 and any(w != 0 for w in v.witness), "witness is not a zero")
    for k in v.children:
        replay(k)
    return True


def _need(cond, msg):
    if not cond:
        raise CertificateError(msg)


def evaluate(q: DiagForm, x):
    """q(x) for finite-field or exact-coefficient forms; returns 0 for a zero."""
    total = None
    for c, xi in zip(q.coeffs, x):
        if isinstance(xi, int) and xi == 0:
            continue
        if hasattr(xi, "is_zero") and xi.is_zero():
            continue
        term = c * xi * xi
        try:
            total = term if total is None else total + term
        except ZeroInput:  # nonzero local elements cannot represent an exact 0
            total = None
            continue
    if total is None:
        return 0
    if hasattr(total, "is_zero"):
        return 0 if total.is_zero() else total
    return total
