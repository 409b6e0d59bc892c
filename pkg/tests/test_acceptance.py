"""End-to-end acceptance checks, one per criterion, each with its time limit.

Run under pytest (a PASS/FAIL line per criterion appears in the terminal
summary) or directly: ``python tests/test_acceptance.py``.
"""

import random
import sys
import time

import pytest

from isoquad.brauer import biquaternion_is_division, symbol_is_nontrivial, symbol_residue, SymbolMod2
from isoquad.curve import BRANCHES, one_minus_x_square_in_completion, one_minus_x_square_in_F, sample_cases
from isoquad.fields import FFRatField, FiniteField, LocalField, QptField, hilbert_symbol, parse_qpt
from isoquad.fixtures import check_fixture, symbol_chain
from isoquad.geometry import local_global_report
from isoquad.geometry.pencil import pencil_search, five_variable_pencil
from isoquad.qform import DiagForm, classical_is_isotropic, is_isotropic, springer_decompose
from isoquad.qform.witness import ffz_search, local_search

RESULTS = {}


def _finite_isotropic(q):
    """Exhaustive zero search over F_p (independent of the engine)."""
    import itertools
    p = q.field.p
    cs = [c.index() for c in q.coeffs]
    if not cs:
        return False
    return any(any(x) and sum(c * xi * xi for c, xi in zip(cs, x)) % p == 0
               for x in itertools.product(range(p), repeat=len(cs)))


# ------------------------------------------------------------------------------

def criterion_1():
    res = check_fixture("albert-chart", 5)
    obs = res.observed
    want = {"base:(t):q1": "<-a,-p,ap,ap>", "base:(t-5):q1": "<-a,-p,ap,p>",
            "base:(1/t):q1": "<-a,-p,ap,a>", "base:(5):q1": "<-a,t,-at,a>"}
    ok = res.passed and all(obs.get(k) == v for k, v in want.items())
    ok = ok and all(obs[k.replace("q1", "status")] == "isotropic" for k in want)
    ok = ok and obs["good_place_rule"] is True
    ok = ok and obs["probe:(5) on chart t=5x:status"] == "anisotropic"
    ok = ok and obs["certificate:q1_anisotropic"] and obs["certificate:q2_anisotropic"]
    return ok, f"{len(res.diffs)} diffs; certificate {obs['certificate']}"


def criterion_2():
    K = QptField(5)
    slots = [parse_qpt(s, 5) for s in ["a", "p", "t", "a*(p-t)"]]
    res = biquaternion_is_division(*slots, K)
    Q5 = LocalField(5)
    h = hilbert_symbol(Q5.element(2), Q5.element(5))
    ok = res.division is True and str(res.certificate.place) == "(5) on chart t=5x" and h == -1
    return ok, f"division={res.division} at {res.certificate.place}; (2,5)_5={h}"


def criterion_3():
    rng = random.Random(2024)
    agree = n = 0
    bad = []
    while n < 510:
        p = rng.choice([3, 5, 7])
        K = LocalField(p)
        q = DiagForm(K, [rng.randrange(1, p) * p ** rng.randrange(2) for _ in range(rng.randint(1, 4))])
        r = local_search(q, max_level=8)
        n += 1
        if r.status != "inconclusive" and (r.status == "witness") == is_isotropic(q).isotropic:
            agree += 1
        else:
            bad.append((str(q), r.status))
    return agree == n, f"{agree}/{n} agree" + (f"; first disagreement {bad[0]}" if bad else "")


def _ffz_form(rng, p):
    Z = FFRatField(p)
    atoms = [Z.element((0, 1)), Z.element((p - 1, 1)), Z.element((1, 1))]
    cs = []
    for _ in range(rng.randint(1, 4)):
        c = Z.element(rng.randrange(1, p))
        for a in atoms:
            if rng.random() < 0.4:
                c = c * a
        cs.append(c)
    return DiagForm(Z, cs)


def criterion_4():
    rng = random.Random(77)
    refuted = iso = found = escalated = 0
    missing = []
    for _ in range(220):
        q = _ffz_form(rng, rng.choice([3, 5]))
        v = is_isotropic(q)
        w = ffz_search(q, max_degree=8)
        if v.anisotropic and w is not None:
            refuted += 1
        if v.isotropic:
            iso += 1
            if w is not None:
                found += 1
            elif ffz_search(q, max_degree=12) is not None:
                escalated += 1
            else:
                missing.append(str(q))
    rate = found / iso if iso else 1.0
    ok = refuted == 0 and rate >= 0.95
    return ok, (f"220 forms; refuted anisotropic verdicts {refuted}; witnesses {found}/{iso} "
                f"at degree <= 8 ({rate:.1%}); {escalated} more at degree 12; "
                f"unresolved {missing[:3]}")


def criterion_5():
    rng = random.Random(5)
    n = good = 0
    for _ in range(200):
        p = rng.choice([3, 5, 7])
        K = LocalField(p)
        q = DiagForm(K, [rng.choice([1, -1]) * rng.randrange(1, p) * p ** rng.randrange(3)
                         for _ in range(rng.randint(1, 5))])
        d = springer_decompose(q)
        rhs = _finite_isotropic(d.q1) or _finite_isotropic(d.q2)
        lhs = is_isotropic(q).isotropic
        n += 1
        good += lhs == rhs == classical_is_isotropic(q)
    for _ in range(120):
        p = rng.choice([3, 5])
        Z = FFRatField(p)
        q = _ffz_form(rng, p)
        place = rng.choice(Z.bad_places(q.coeffs))
        local = DiagForm(place, q.coeffs)
        d = springer_decompose(local)
        rhs = any(is_isotropic(f).isotropic for f in (d.q1, d.q2) if f.rank)
        # residue fields F_p get an exhaustive cross-check as well
        brute_ok = place.degree > 1 or rhs == (_finite_isotropic(d.q1) or _finite_isotropic(d.q2))
        n += 1
        good += brute_ok and is_isotropic(local).isotropic == rhs
    return good == n, f"{good}/{n} forms satisfy the residue-form equivalence"


def criterion_6():
    f, g = five_variable_pencil(5, 2, 2)
    res = pencil_search(f, g, 5)
    return res.no_primitive_solution, (f"{res.mod_p_survivors} survivors mod 5, "
                                       f"{res.vectors_checked} lifts checked, none a common zero")


def criterion_7():
    Z = FFRatField(5)
    s = SymbolMod2(Z, [Z.element((4, 0, 1)), 2])
    r = symbol_residue(s, Z.place((4, 1))).as_symbol()
    direct = r.entries == (FiniteField(5)(2),) and symbol_is_nontrivial(r) is True
    chain = symbol_chain(5, 2)
    via_chain = chain["on_z"] == s and chain["second_residue"] == r
    return direct and via_chain, f"residue {r}; chain reaches {chain['second_residue']}"


def criterion_8():
    in_f = one_minus_x_square_in_F(5)
    cases = sample_cases(5, 100, seed=7)
    results = [one_minus_x_square_in_completion(c) for c in cases]
    branches = {c.branch for c in cases}
    ok = in_f is False and all(r.square for r in results) and branches == set(BRANCHES)
    return ok, f"square in F: {in_f}; {sum(r.square for r in results)}/100 completions square"


def criterion_9():
    rng = random.Random(9)
    atoms = ["t", "(t-1)", "(t+1)", "(t-5)", "(t^2+2)", "(5*t+1)"]
    consts = ["1", "-1", "a", "-a", "p", "a*p", "-p"]
    checked = 0
    failures = []
    for _ in range(100):
        ss = []
        for _ in range(9):
            term = rng.choice(consts)
            for a in rng.sample(atoms, rng.randint(0, 2)):
                term += f"*{a}"
            ss.append(term)
        q = DiagForm(QptField(5), [parse_qpt(s, 5) for s in ss])
        rep = local_global_report(q)
        for e in rep.entries:
            checked += 1
            if not e.verdict.isotropic:
                failures.append((ss, str(e.place)))
    return not failures, f"{checked} completions checked, {len(failures)} not isotropic"


CRITERIA = [
    (1, "Albert-form chart fixture", criterion_1, 5),
    (2, "biquaternion division certificate", criterion_2, 5),
    (3, "Q_p engine vs mod-p^8 search", criterion_3, 60),
    (4, "F_p(z) engine vs degree-bounded search", criterion_4, 120),
    (5, "residue-form equivalence", criterion_5, 30),
    (6, "pencil has no primitive zero mod 25", criterion_6, 60),
    (7, "symbol residue (z^2-1) u at z-1", criterion_7, 1),
    (8, "1-x on the curve", criterion_8, 10),
    (9, "rank-9 forms locally isotropic", criterion_9, 60),
]


def run(num, name, fn, limit):
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # report, then let pytest see the failure
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    dt = time.perf_counter() - t0
    passed = bool(ok) and dt < limit
    line = (f"criterion {num} [{'PASS' if passed else 'FAIL'}] {name}: {detail} "
            f"({dt:.2f}s, limit {limit}s)")
    RESULTS[num] = line
    return passed, line


@pytest.mark.parametrize("num,name,fn,limit", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, name, fn, limit):
    passed, line = run(num, name, fn, limit)
    print(line)
    assert passed, line


if __name__ == "__main__":
    status = 0
    for c in CRITERIA:
        passed, line = run(*c)
        print(line, flush=True)
        status |= not passed
    sys.exit(status)
