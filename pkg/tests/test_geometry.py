import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from isoquad.errors import BudgetExceeded, DegenerateEntry
from isoquad.fields import QptField, parse_qpt
from isoquad.fields.render import symbolic_form
from isoquad.geometry import (
    auto_probes, completion_verdict, enumerate_bad_places, good_place_rule, horizontal, infinity,
    local_global_report, special_fibre, substitute,
)
from isoquad.geometry.pencil import (
    amer_brumer_pencil, pencil_no_primitive_solution, pencil_search, five_variable_pencil,
)
from isoquad.geometry.places import parse_chart
from isoquad.geometry.report import replay_report
from isoquad.qform import DiagForm, springer_decompose

P, A = 5, 2
RST = ["-a", "-p", "a*p", "t", "a*(p-t)", "-a*t*(p-t)"]


def form(ss, p=P, var="t"):
    return DiagForm(QptField(p, var), [parse_qpt(s, p, var) for s in ss])


def names(places):
    return [str(x) for x in places]


def test_bad_places():
    assert names(enumerate_bad_places(form(RST))) == ["(t)", "(t-5)", "(1/t)", "(5)"]
    assert names(enumerate_bad_places(form(["1", "-1"]))) == ["(1/t)", "(5)"]
    assert names(enumerate_bad_places(form(["t", "t-1"]))) == ["(t)", "(t-1)", "(1/t)", "(5)"]


def test_good_place_rule():
    assert good_place_rule(form(RST)).applies
    assert not good_place_rule(form(["1", "2", "t", "3"])).applies
    assert good_place_rule(form(["1"] * 9)).applies


def test_substitute_examples():
    q = form(RST)
    raw = substitute(q, "t=5x", normalized=False)
    assert symbolic_form(raw, P, A) == "<-a,-p,ap,px,-ap(x-1),ap^2x(x-1)>"
    assert symbolic_form(substitute(q, "t=5x"), P, A) == "<-a,-p,ap,px,-ap(x-1),ax(x-1)>"
    assert substitute(q, ()) == q
    assert str(substitute(form(["t"]), "t=1/x")) == "<x>"


@pytest.mark.parametrize("place,q1", [
    (horizontal((0, 1), P), "<-a,-p,ap,ap>"),
    (horizontal((-5, 1), P), "<-a,-p,ap,p>"),
    (infinity(P), "<-a,-p,ap,a>"),
    (special_fibre(P), "<-a,t,-at,a>"),
])
def test_base_place_verdicts(place, q1):
    _, v = completion_verdict(form(RST), place)
    assert v.isotropic
    assert symbolic_form(v.decomposition.q1, P, A, reduced=True) == q1


def test_blowup_place_anisotropic():
    place = special_fibre(P, parse_chart("t=5x", P))
    chain, v = completion_verdict(form(RST), place)
    assert v.anisotropic
    d = v.decomposition
    assert symbolic_form(d.q1, P, A) == "<-a,ax(x-1)>"  # <-a, -a x (1-x)>
    assert symbolic_form(d.q2, P, A) == "<-1,a,x,-a(x-1)>"
    assert chain[0]["status"] == "anisotropic"


def test_report_rst():
    rep = local_global_report(form(RST))
    base = [e for e in rep.entries if e.role == "base"]
    assert all(e.verdict.isotropic for e in base)
    assert rep.summary["anisotropy_certificate"] == "(5) on chart t=5x"
    assert rep.summary["text"].endswith("isotropic at all codimension-1 places of the base model")


def test_report_split_rank_five():
    rep = local_global_report(form(["1", "-1", "1", "1", "1"]))
    assert all(e.verdict.isotropic for e in rep.entries)
    assert rep.good_place.applies and rep.summary["anisotropy_certificate"] is None
    assert "global isotropy not decided" in rep.summary["text"]


def test_report_rank_two_is_incomplete():
    rep = local_global_report(form(["1", "-a"]))
    assert not rep.good_place.applies
    assert "incomplete" in rep.good_place.text
    assert names(e.place for e in rep.entries) == ["(1/t)", "(5)"]


def test_report_replays_from_json():
    for ss in (RST, ["1", "-a"], ["t", "t-1", "a", "p*t"]):
        q = form(ss)
        data = json.loads(json.dumps(local_global_report(q).to_json()))
        assert replay_report(q, data)


def test_never_both_global_claim_and_anisotropic_entry():
    rng = random.Random(2)
    atoms = ["1", "a", "p", "t", "(t-1)", "(t+1)", "(p-t)", "(t^2+2)"]
    for _ in range(15):
        q = form(["*".join(rng.sample(atoms, 2)) for _ in range(rng.randint(2, 5))])
        rep = local_global_report(q)
        if rep.anisotropic_entries():
            assert rep.summary["anisotropy_certificate"] is not None
            assert "global isotropy not decided" not in rep.summary["text"]


def test_auto_probes_deterministic():
    q = form(["t", "t-6", "a*(t^2+2)", "5*t+1"])
    assert auto_probes(q) == auto_probes(form(["t", "t-6", "a*(t^2+2)", "5*t+1"]))
    assert [tuple(m.spec() for m in ch) for ch in auto_probes(q)] == [("0",), ("1",), ("inf", "0")]


@settings(max_examples=25)
@given(st.integers(0, 4), st.lists(st.sampled_from(["1", "a", "p", "a*p"]), min_size=1, max_size=4),
       st.lists(st.booleans(), min_size=4, max_size=4))
def test_chart_coherence(c, consts, use_atom):
    # (t - c) on the base chart and (x) after t = c + p x are the same valuation
    # up to the scaling of the uniformizer by p, a unit of the residue field Q_p
    atom = f"(t-{c})" if c else "t"
    q = form([k + (f"*{atom}" if u else "") for k, u in zip(consts, use_atom)])
    _, v0 = completion_verdict(q, horizontal((-c, 1), P))
    q2 = substitute(q, parse_chart(str(c), P))
    _, v1 = completion_verdict(q2, horizontal((0, 1), P, ()))
    assert v0.status == v1.status


# --- pencils --------------------------------------------------------------------

def test_amer_brumer_examples():
    assert str(amer_brumer_pencil([1, 1], [1, -1], 5)) == "<(t+1), -(t-1)>"
    f, g = five_variable_pencil(5, 2, 2)
    assert f == [1, 2, 5, 2 * 5 ** 4, 5 ** 2]
    assert g == [5 ** 9, 5 ** 8, 2 * 5 ** 4, 1, 5]
    q = amer_brumer_pencil(f, g, 5)
    expected = ["1+5^9*t", "2+5^8*t", "5+2*5^4*t", "2*5^4+t", "5^2+5*t"]
    assert list(q.coeffs) == [parse_qpt(s, 5) for s in expected]
    with pytest.raises(DegenerateEntry):
        amer_brumer_pencil([1, 0], [1, 0], 5)


def test_pencil_small_cases():
    assert pencil_no_primitive_solution([0, 0, 1], [0, 0, 1], 5) is False
    assert pencil_no_primitive_solution([1, 0], [1, 0], 3) is False
    with pytest.raises(BudgetExceeded):
        pencil_search([1] * 7, [1] * 7, 3)


def test_pencil_search_agrees_with_bruteforce_rank3():
    import itertools
    rng = random.Random(4)
    p, m = 3, 9
    for _ in range(20):
        f = [rng.choice([1, 2, 3, 6, 9]) for _ in range(3)]
        g = [rng.choice([1, 2, 3, 6, 9]) for _ in range(3)]
        brute = not any(
            any(x % p for x in v)
            and sum(a * x * x for a, x in zip(f, v)) % m == 0
            and sum(b * x * x for b, x in zip(g, v)) % m == 0
            for v in itertools.product(range(m), repeat=3))
        assert pencil_no_primitive_solution(f, g, p) == brute


def test_pencil_local_isotropy():
    q = amer_brumer_pencil(*five_variable_pencil(5, 2, 2), 5)
    rep = local_global_report(q)
    hor = [e for e in rep.entries if e.place.kind == "horizontal"]
    assert len(hor) == 5 and all(e.verdict.isotropic for e in hor)
    for e in hor:
        d = springer_decompose(DiagForm(e.place.completion(), q.coeffs))
        assert d.q1.rank == 4
