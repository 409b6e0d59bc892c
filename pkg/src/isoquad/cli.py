"""Command-line interface.

Every command builds a JSON document (``schema: 1``); the text output is a
rendering of that document.  Exit codes: 0 decided or pass, 1 parse error,
2 unsupported, 3 fixture mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import __version__
from .errors import (
    BudgetExceeded, ParseError, Undetermined, Unsupported, UnsupportedEntry, UnsupportedPlace,
    ValidationError, IsoquadError,
)
from .fields import local as _local
from .fields.ffz import FFRatField, FFRatFunc
from .fields.finite import FiniteField
from .fields.local import LocalField, smallest_nonresidue
from .fields.parse import detect_var, parse_ffz_poly, parse_qpt, parse_rational, split_list
from .fields.qpt import QptField
from .qform.engine import Status, is_isotropic
from .qform.form import DiagForm, form_from_json

SCHEMA = 1
EXIT_OK, EXIT_PARSE, EXIT_UNSUPPORTED, EXIT_MISMATCH = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    p: int
    a: int | None = None
    precision: int = 12
    modulus_exponent: int = 8
    degree: int = 8
    seed: int = 7
    out: str | None = None

    def __post_init__(self):
        if self.p < 3 or self.p % 2 == 0 or any(self.p % d == 0 for d in range(3, int(self.p ** 0.5) + 1)):
            raise ValidationError(f"p = {self.p} is not an odd prime")
        if self.precision < 6:
            raise ValidationError("precision must be at least 6")
        if self.modulus_exponent < 1 or self.degree < 0:
            raise ValidationError("budgets must be positive")
        if self.a is not None and pow(self.a, (self.p - 1) // 2, self.p) != self.p - 1:
            raise ValidationError(f"a = {self.a} is not a quadratic nonresidue mod {self.p}")

    @property
    def nonresidue(self) -> int:
        return smallest_nonresidue(self.p) if self.a is None else self.a


def _config(args) -> RunConfig:
    cfg = RunConfig(p=args.p, a=getattr(args, "a", None), precision=args.precision,
                    modulus_exponent=getattr(args, "N", 8) or 8,
                    degree=getattr(args, "degree", 8) or 8,
                    seed=getattr(args, "seed", 7), out=getattr(args, "out", None))
    _local.DEFAULT_PRECISION = cfg.precision
    return cfg


# ------------------------------------------------------------------------------
# field specs

def build_field(kind: str, cfg: RunConfig, var: str = "t", ext: str | None = None):
    p = cfg.p
    if kind == "qp":
        if ext in (None, "none"):
            return LocalField(p, precision=cfg.precision)
        if ext == "unramified":
            return LocalField(p, (-smallest_nonresidue(p), 0), precision=cfg.precision)
        if ext == "ramified":
            return LocalField(p, (-p, 0), precision=cfg.precision)
        raise ValidationError(f"unknown extension {ext!r}")
    if kind == "fq":
        return FiniteField(p)
    if kind in ("ffz", "fp-ratfunc"):
        return FFRatField(p, var)
    if kind == "qpt":
        return QptField(p, var)
    raise ValidationError(f"unknown field kind {kind!r}")


def parse_entry(text: str, field, cfg: RunConfig):
    a = cfg.nonresidue
    kind = field.kind
    if kind == "local":
        return field.element(parse_rational(text, cfg.p, a))
    if kind == "finite":
        v = parse_rational(text, cfg.p, a)
        return field(v.numerator * pow(v.denominator, -1, cfg.p))
    if kind == "ffz":
        num, den = parse_ffz_poly(text, cfg.p, field.var, a)
        return FFRatFunc.from_poly(num, cfg.p, field.var) / FFRatFunc.from_poly(den, cfg.p, field.var)
    if kind == "qpt":
        return parse_qpt(text, cfg.p, field.var, a)
    raise ValidationError(f"cannot parse entries over {field.describe()}")


def parse_form(text: str, kind: str, cfg: RunConfig, ext=None) -> DiagForm:
    """Entries as a string, or a path to a file holding either the string or form JSON."""
    if os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            text = fh.read().strip()
        if text.startswith("{"):
            q = form_from_json(json.loads(text))
            want = {"qp": "local", "fq": "finite", "ffz": "ffz", "fp-ratfunc": "ffz"}.get(kind, kind)
            if q.field.kind != want:
                raise ValidationError(f"form file is over {q.field.describe()}, expected {kind}")
            return q
    items = split_list(text)
    if not items:
        raise ParseError("empty form")
    var = detect_var(items)
    if kind in ("ffz", "fp-ratfunc") and var == "t":
        var = "z" if not any("t" in s for s in items) else "t"
    F = build_field(kind, cfg, var, ext)
    return DiagForm(F, [parse_entry(s, F, cfg) for s in items])


# ------------------------------------------------------------------------------
# commands

def cmd_isotropy(args) -> tuple[dict, int]:
    cfg = _config(args)
    q = parse_form(args.form, args.field, cfg, args.ext)
    v = is_isotropic(q, shortcuts=not args.no_shortcuts)
    doc = {"schema": SCHEMA, "command": "isotropy", "p": cfg.p, "a": cfg.nonresidue,
           "field": q.field.describe(), "form": str(q), "status": v.status.value,
           "verdict": v.to_json(), "chain": v.chain()}
    return doc, EXIT_UNSUPPORTED if v.status is Status.UNSUPPORTED else EXIT_OK


def _probes(spec):
    if spec in (None, "auto"):
        return "auto"
    if spec == "none":
        return []
    return [s for s in spec.split(",") if s]


def cmd_report(args) -> tuple[dict, int]:
    from .geometry.report import local_global_report
    cfg = _config(args)
    q = parse_form(args.form, "qpt", cfg)
    rep = local_global_report(q, _probes(args.probes), cfg.nonresidue)
    doc = dict(rep.to_json(), command="report")
    return doc, EXIT_UNSUPPORTED if rep.summary["unsupported"] else EXIT_OK


def cmd_albert(args) -> tuple[dict, int]:
    from .brauer import albert_form, biquaternion_is_division
    from .fields.render import symbolic_form
    cfg = _config(args)
    slots = split_list(args.slots)
    if len(slots) != 4:
        raise ParseError("--slots needs four entries a,b,c,d")
    var = detect_var(slots)
    F = build_field(args.field, cfg, var if args.field != "ffz" or var != "t" else "z", args.ext)
    vals = [parse_entry(s, F, cfg) for s in slots]
    q = albert_form(*vals, F)
    doc = {"schema": SCHEMA, "command": "albert", "p": cfg.p, "a": cfg.nonresidue,
           "field": F.describe(), "albert_form": str(q)}
    if F.kind == "qpt":
        doc["albert_form_symbolic"] = symbolic_form(q, cfg.p, cfg.nonresidue)
    try:
        res = biquaternion_is_division(*vals, F, _probes(args.probes))
    except Undetermined as exc:
        doc["division"] = None
        doc["undetermined"] = str(exc)
        return doc, EXIT_UNSUPPORTED
    doc.update(res.to_json())
    return doc, EXIT_OK


def cmd_symbol(args) -> tuple[dict, int]:
    from .brauer import SymbolMod2, symbol_is_nontrivial, symbol_residue
    cfg = _config(args)
    entries = split_list(args.entries)
    var = detect_var(entries + ([args.residue_at] if args.residue_at else []))
    if args.field in ("fp-ratfunc", "ffz") and var == "t":
        var = "z"
    F = build_field(args.field, cfg, var, args.ext)
    s = SymbolMod2(F, [parse_entry(e, F, cfg) for e in entries])
    doc = {"schema": SCHEMA, "command": "symbol", "p": cfg.p, "a": cfg.nonresidue,
           "field": F.describe(), "symbol": str(s), "nontrivial": _tri(symbol_is_nontrivial(s))}
    if args.residue_at:
        place = _symbol_place(args.residue_at, F, cfg)
        r = symbol_residue(s, place)
        doc["place"] = str(place)
        doc["residue"] = str(r)
        doc["residue_field"] = r.field.describe()
        doc["residue_nontrivial"] = _tri(symbol_is_nontrivial(r))
    return doc, EXIT_OK


def _tri(v):
    return v if isinstance(v, bool) else "unknown"


def _symbol_place(text: str, F, cfg: RunConfig):
    text = text.strip()
    if F.kind == "local":
        return None
    if F.kind == "ffz":
        if text in ("inf", "infinity"):
            return F.place(None)
        num, den = parse_ffz_poly(text, cfg.p, F.var, cfg.nonresidue)
        if den != (1,) or len(num) < 2 or num[-1] != 1:
            raise ParseError(f"place {text!r} must be a monic irreducible polynomial")
        return F.place(num)
    if F.kind == "qpt":
        from .geometry.places import horizontal, infinity, special_fibre
        if text in ("inf", "infinity"):
            return infinity(cfg.p)
        if text in ("p", str(cfg.p)):
            return special_fibre(cfg.p)
        g = parse_qpt(text, cfg.p, F.var, cfg.nonresidue)
        if len(g.factors) != 1:
            raise ParseError(f"place {text!r} must be a single atom")
        return horizontal(g.factors[0][0], cfg.p)
    raise ValidationError(f"no places over {F.describe()}")


def cmd_appendix(args) -> tuple[dict, int]:
    from .curve import curve_report
    cfg = _config(args)
    rep = curve_report(cfg.p, args.samples, cfg.seed)
    doc = dict(rep.to_json(), command="appendix")
    return doc, EXIT_OK


def cmd_pencil(args) -> tuple[dict, int]:
    from .geometry.pencil import amer_brumer_pencil, five_variable_pencil, pencil_search
    from .geometry.report import local_global_report
    cfg = _config(args)
    if args.f or args.g:
        if not (args.f and args.g):
            raise ParseError("--f and --g go together")
        f = [parse_rational(s, cfg.p, cfg.nonresidue) for s in split_list(args.f)]
        g = [parse_rational(s, cfg.p, cfg.nonresidue) for s in split_list(args.g)]
    else:
        f, g = five_variable_pencil(cfg.p, args.u if args.u is not None else cfg.nonresidue, args.s)
    res = pencil_search(f, g, cfg.p)
    doc = {"schema": SCHEMA, "command": "pencil", "p": cfg.p, "f": [str(x) for x in f],
           "g": [str(x) for x in g], "search": res.to_json()}
    if args.report:
        q = amer_brumer_pencil(f, g, cfg.p)
        doc["report"] = local_global_report(q, "auto", cfg.nonresidue).to_json()
    return doc, EXIT_OK


def cmd_fixture(args) -> tuple[dict, int]:
    from .fixtures import FIXTURES, check_fixture
    cfg = _config(args)
    if args.name == "list":
        doc = {"schema": SCHEMA, "command": "fixture",
               "fixtures": {n: {"aliases": list(f.aliases), "inputs": f.inputs,
                                "input_hash": f.input_hash()} for n, f in FIXTURES.items()}}
        return doc, EXIT_OK
    kw = {}
    if args.samples is not None:
        kw["samples"] = args.samples
    try:
        res = check_fixture(args.name, cfg.p, **kw)
    except KeyError as exc:
        raise ValidationError(str(exc.args[0])) from None
    doc = dict(res.to_json(), command="fixture", verdict="PASS" if res.passed else "FAIL")
    return doc, EXIT_OK if res.passed else EXIT_MISMATCH


def cmd_oracle(args) -> tuple[dict, int]:
    from .qform.witness import ffz_search, local_search, square_table
    cfg = _config(args)
    doc = {"schema": SCHEMA, "command": "oracle", "kind": args.kind, "p": cfg.p}
    if args.kind == "square-table":
        F = FiniteField(cfg.p) if args.ext in (None, "none") else \
            LocalField(cfg.p, (-smallest_nonresidue(cfg.p), 0)).residue_field
        doc["field"] = F.describe()
        doc["squares"] = [x.index() for x in square_table(F)]
        doc["squares_signed"] = [str(x) for x in square_table(F)]
        return doc, EXIT_OK
    if not args.form:
        raise ParseError("--form is required")
    if args.kind == "mod-pn-search":
        q = parse_form(args.form, "qp", cfg)
        r = local_search(q, max_level=cfg.modulus_exponent)
        doc.update(form=str(q), budget=cfg.modulus_exponent, result=r.to_json(),
                   certification="Hensel-certified" if r.status != "inconclusive" else "bound-limited")
        return doc, EXIT_OK
    if args.kind == "ffz-degree-search":
        q = parse_form(args.form, "ffz", cfg)
        w = ffz_search(q, max_degree=cfg.degree)
        doc.update(form=str(q), budget=cfg.degree,
                   witness=None if w is None else [_poly_text(x, q.field) for x in w],
                   certification="verified by evaluation" if w is not None else
                   f"no witness of degree <= {cfg.degree} (bound-limited)")
        return doc, EXIT_OK
    raise ValidationError(f"unknown oracle {args.kind!r}")


def _poly_text(x, F) -> str:
    if not x:
        return "0"
    return str(FFRatFunc.from_poly(x, F.p, F.var)) if len(x) > 1 else str(x[0])


# ------------------------------------------------------------------------------

def render_text(doc, indent: int = 0) -> str:
    """Plain-text rendering of a JSON document."""
    pad = "  " * indent
    lines = []
    if isinstance(doc, dict):
        for k, v in doc.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(doc, list):
        for item in doc:
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(pad + _scalar(doc))
    return "\n".join(lines)


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "null"
    if isinstance(v, (list, dict)):
        return json.dumps(v)
    return str(v)


def _env_precision() -> int:
    try:
        return int(os.environ.get("ISOQUAD_PRECISION", "12"))
    except ValueError:
        return 12


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=5, help="odd prime (default 5)")
    common.add_argument("--a", type=int, default=None,
                        help="nonresidue standing for the symbol a (default: smallest)")
    common.add_argument("--precision", type=int, default=_env_precision(),
                        help="p-adic working precision (env ISOQUAD_PRECISION, default 12)")
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    common.add_argument("--out", default=None, help="also write the JSON document here")

    ap = argparse.ArgumentParser(prog="isoquad", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("isotropy", parents=[common], help="decide isotropy of a diagonal form")
    s.add_argument("--field", choices=["qp", "fq", "ffz", "qpt"], default="qp")
    s.add_argument("--ext", choices=["none", "unramified", "ramified"], default=None)
    s.add_argument("--form", required=True, help='comma-separated entries, e.g. "-1,a,a"')
    s.add_argument("--no-shortcuts", action="store_true")
    s.set_defaults(func=cmd_isotropy)

    s = sub.add_parser("report", parents=[common], help="local-global report over Q_p(t)")
    s.add_argument("--form", required=True)
    s.add_argument("--probes", default="auto", help='"auto", "none" or charts like "0,inf/0"')
    s.set_defaults(func=cmd_report)

    s = sub.add_parser("albert", parents=[common], help="Albert form and division test")
    s.add_argument("--slots", required=True, help="a,b,c,d")
    s.add_argument("--field", choices=["qpt", "qp", "ffz"], default="qpt")
    s.add_argument("--ext", choices=["none", "unramified", "ramified"], default=None)
    s.add_argument("--probes", default="auto")
    s.set_defaults(func=cmd_albert)

    s = sub.add_parser("symbol", parents=[common], help="mod-2 symbols and their residues")
    s.add_argument("--field", choices=["fp-ratfunc", "qp", "qpt", "fq"], default="fp-ratfunc")
    s.add_argument("--ext", choices=["none", "unramified", "ramified"], default=None)
    s.add_argument("--entries", required=True)
    s.add_argument("--residue-at", default=None, help='place, e.g. "z-1", "inf" or "p"')
    s.set_defaults(func=cmd_symbol)

    s = sub.add_parser("appendix", parents=[common], help="1-x on y^2 = x(1-x)(x-p)")
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--seed", type=int, default=7)
    s.set_defaults(func=cmd_appendix)

    s = sub.add_parser("pencil", parents=[common], help="primitive zeros of f = g = 0 mod p^2")
    s.add_argument("--f", default=None)
    s.add_argument("--g", default=None)
    s.add_argument("--u", type=int, default=None)
    s.add_argument("--s", type=int, default=2)
    s.add_argument("--report", action="store_true", help="also report on f + t*g")
    s.set_defaults(func=cmd_pencil)

    s = sub.add_parser("fixture", parents=[common], help="run a pinned scenario, or 'list'")
    s.add_argument("name")
    s.add_argument("--samples", type=int, default=None)
    s.set_defaults(func=cmd_fixture)

    s = sub.add_parser("oracle", parents=[common], help="brute-force oracles")
    s.add_argument("kind", choices=["mod-pn-search", "ffz-degree-search", "square-table"])
    s.add_argument("--form", default=None)
    s.add_argument("--N", type=int, default=8, help="modulus exponent for mod-pn-search")
    s.add_argument("--degree", type=int, default=8, help="degree bound for ffz-degree-search")
    s.add_argument("--ext", choices=["none", "unramified"], default=None)
    s.set_defaults(func=cmd_oracle)
    return ap


_VALUE_FLAGS = ("--form", "--slots", "--entries", "--f", "--g", "--residue-at")


def _glue_values(argv):
    """Attach values such as "-1,a,a" to their flag so argparse does not read them as options."""
    out, i = [], 0
    while i < len(argv):
        if argv[i] in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(_glue_values(list(sys.argv[1:] if argv is None else argv)))
    try:
        doc, code = args.func(args)
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (Unsupported, UnsupportedEntry, UnsupportedPlace, Undetermined, BudgetExceeded) as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except IsoquadError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    text = json.dumps(doc, indent=2, ensure_ascii=False, default=str)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text if args.json else render_text(doc))
    return code
