"""Named end-to-end scenarios with pinned expectations.

Each fixture has a versioned input record (hashed) and a runner returning a
flat dict of observations; ``check_fixture`` diffs the observations against the
pinned expectations in ``data/fixtures.json``.  Place names and forms in the
pins are templated by ``{p}``.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from importlib import resources

from .brauer import (
    SymbolMod2, albert_form, biquaternion_is_division, quaternion_norm_form, symbol_is_nontrivial,
    symbol_residue,
)
from .curve import curve_report
from .errors import ValidationError
from .fields.ffz import FFRatField
from .fields.local import LocalField, smallest_nonresidue
from .fields.parse import parse_qpt
from .fields.qpt import FactoredRatFunc, QptField
from .fields.render import symbolic_form
from .geometry.pencil import amer_brumer_pencil, five_variable_pencil, pencil_search
from .geometry.places import special_fibre
from .geometry.report import local_global_report
from .qform.engine import is_isotropic

FIXTURE_VERSION = 1


@dataclass(frozen=True)
class Fixture:
    name: str
    inputs: dict
    runner: object
    aliases: tuple = ()

    def input_hash(self) -> str:
        blob = json.dumps({"name": self.name, "version": FIXTURE_VERSION, "inputs": self.inputs},
                          sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()


def _albert_slots(p: int, slots):
    K = QptField(p)
    return K, [parse_qpt(s, p) for s in slots]


def run_albert_chart(p: int, inputs: dict) -> dict:
    K, slots = _albert_slots(p, inputs["slots"])
    q = albert_form(*slots, K)
    rep = local_global_report(q, "auto")
    a = rep.header["a"]
    out = {"form": rep.header["form"], "good_place_rule": rep.good_place.applies}
    for e in rep.entries:
        js = e.to_json()
        key = f"{e.role}:{e.place}"
        out[f"{key}:status"] = js["status"]
        if "q1" in js:
            out[f"{key}:q1"] = js["q1"]
            out[f"{key}:q2"] = js["q2"]
    cert = rep.anisotropic_entries()
    out["certificate"] = str(cert[0].place) if cert else None
    if cert:
        dec = cert[0].verdict.decomposition
        out["certificate:q1_anisotropic"] = is_isotropic(dec.q1).anisotropic
        out["certificate:q2_anisotropic"] = is_isotropic(dec.q2).anisotropic
        out["certificate:q1_unreduced"] = symbolic_form(dec.q1, p, a)
    out["summary"] = rep.summary["text"]
    div = biquaternion_is_division(*slots, K)
    out["division"] = div.division
    out["division:certificate"] = str(div.certificate.place)
    return out


def run_pencil(p: int, inputs: dict) -> dict:
    u = inputs["u"] if p == 5 else smallest_nonresidue(p)
    if p % 4 != 1:
        raise ValidationError("the pencil example needs p = 1 mod 4")
    out = {}
    # first system: both halves are the anisotropic quaternion norm form
    Q = LocalField(p)
    nf = quaternion_norm_form(u, p, Q)
    out["norm_form"] = str(nf)
    out["norm_form:anisotropic"] = is_isotropic(nf).anisotropic
    f, g = five_variable_pencil(p, u, inputs["s"])
    res = pencil_search(f, g, p)
    out["no_primitive_solution_mod_p2"] = res.no_primitive_solution
    out["mod_p_survivors"] = res.mod_p_survivors
    out["vectors_checked"] = res.vectors_checked
    q = amer_brumer_pencil(f, g, p)
    rep = local_global_report(q, "auto")
    hor = [e for e in rep.entries if e.role == "base" and e.place.kind == "horizontal"]
    out["horizontal_bad_places"] = len(hor)
    out["horizontal_isotropic"] = all(e.verdict.isotropic for e in hor)
    out["horizontal_unit_subform_rank"] = sorted({e.verdict.decomposition.q1.rank for e in hor})
    out["horizontal_unit_subform_isotropic"] = all(
        is_isotropic(e.verdict.decomposition.q1).isotropic for e in hor)
    inf = [e for e in rep.entries if e.place.kind == "infinity"]
    out["infinity_isotropic"] = inf[0].verdict.isotropic
    out["special_fibre_anisotropic"] = rep.entry(special_fibre(p)).verdict.anisotropic
    return out


def symbol_chain(p: int, u: int | None = None) -> dict:
    """(x) ∪ (u) ∪ (p) -> residue at p -> x = z^2 - 1 -> residue at z - 1."""
    u = smallest_nonresidue(p) if u is None else u
    K = QptField(p)
    x = FactoredRatFunc.atom((0, 1), p)
    alpha = SymbolMod2(K, [x, u, p])
    r1 = symbol_residue(alpha, special_fibre(p)).as_symbol()
    # the curve coordinate is carried as t in Q_p(t); relabel after reduction
    reduced = [e.with_var("x") for e in r1.entries]
    Z = FFRatField(p, "z")
    lifted = SymbolMod2(Z, [e.substitute((p - 1, 0, 1)).with_var("z") for e in reduced])
    r2 = symbol_residue(lifted, Z.place((p - 1, 1))).as_symbol()
    return {"alpha": alpha, "first_residue": reduced, "on_z": lifted, "second_residue": r2}


def run_symbol(p: int, inputs: dict) -> dict:
    ch = symbol_chain(p, inputs["u"] if p == 5 else None)
    r2 = ch["second_residue"]
    return {
        "first_residue": " ∪ ".join(f"({e})" for e in ch["first_residue"]),
        "on_z": str(ch["on_z"]),
        "second_residue": str(r2),
        "second_residue_is_u": not r2.zero and r2.entries[0] == r2.field.element(
            inputs["u"] if p == 5 else smallest_nonresidue(p)),
        "second_residue_nontrivial": symbol_is_nontrivial(r2),
        "on_z_nontrivial": symbol_is_nontrivial(ch["on_z"]),
    }


def run_appendix(p: int, inputs: dict, samples: int | None = None, seed: int | None = None) -> dict:
    rep = curve_report(p, samples or inputs["samples"], inputs["seed"] if seed is None else seed)
    counts = rep.branch_counts()
    return {
        "one_minus_x_square_in_F": rep.square_in_F,
        "all_completions_square": rep.all_square,
        "all_branches_sampled": all(v > 0 for v in counts.values()),
        "direct_checks_agree": all(r.square == r.direct for _, r in rep.results),
        "max_depth": max(r.depth for _, r in rep.results),
    }


FIXTURES = {f.name: f for f in (
    Fixture("remark-3-6", {"slots": ["a", "p", "t", "a*(p-t)"], "probes": "auto"},
            run_albert_chart, ("albert-chart", "biquaternion-division")),
    Fixture("remark-3-8", {"u": 2, "s": 2}, run_pencil, ("pencil", "intersection-of-quadrics")),
    Fixture("symbol-g2", {"u": 2, "reduction": "x -> z^2-1", "second_place": "z-1"},
            run_symbol, ("g2-symbol", "symbol-residue-chain")),
    Fixture("appendix-curve", {"samples": 100, "seed": 7}, run_appendix,
            ("one-minus-x", "elliptic-curve")),
)}


def resolve(name: str) -> Fixture:
    if name in FIXTURES:
        return FIXTURES[name]
    for f in FIXTURES.values():
        if name in f.aliases:
            return f
    raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")


def load_pins() -> dict:
    text = resources.files("isoquad").joinpath("data/fixtures.json").read_text(encoding="utf-8")
    return json.loads(text)


def _fill(v, p):
    if isinstance(v, str):
        return v.replace("{p}", str(p))
    return v


@dataclass
class FixtureResult:
    name: str
    p: int
    observed: dict
    diffs: list
    input_hash: str
    notes: list

    @property
    def passed(self) -> bool:
        return not self.diffs

    def to_json(self):
        return {"schema": 1, "fixture": self.name, "p": self.p, "input_hash": self.input_hash,
                "passed": self.passed, "observed": self.observed,
                "diffs": self.diffs, "notes": self.notes}


def check_fixture(name: str, p: int = 5, **kw) -> FixtureResult:
    fx = resolve(name)
    pins = load_pins()[fx.name]
    diffs = []
    h = fx.input_hash()
    if pins["input_hash"] != h:
        diffs.append({"key": "input_hash", "expected": pins["input_hash"], "observed": h})
    observed = fx.runner(p, fx.inputs, **kw)
    expected = dict(pins["expect"])
    expected.update(pins.get("expect_p", {}).get(str(p), {}))
    if fx.name == "symbol-g2" and p != 5:
        # the pinned strings spell out u = 2
        expected = {k: v for k, v in expected.items() if not isinstance(v, str)}
    for key, val in expected.items():
        key, val = _fill(key, p), _fill(val, p)
        got = observed.get(key, "<missing>")
        if got != val:
            diffs.append({"key": key, "expected": val, "observed": got})
    return FixtureResult(fx.name, p, observed, diffs, h, pins.get("notes", []))
