import random

import pytest
from hypothesis import given, strategies as st

from isoquad.errors import NonNormalCrossings, Unsupported, ValidationError
from isoquad.fields import FFRatField, FiniteField, LocalField, QptField, parse_qpt
from isoquad.fields.render import symbolic_form
from isoquad.geometry import horizontal, infinity, special_fibre, substitute
from isoquad.qform import (
    DiagForm, Status, classical_is_isotropic, form_from_json, is_isotropic, normalize, replay,
    springer_decompose, two_param_decompose,
)
from isoquad.qform.witness import isotropy_witness_search, local_search

from oracles import finite_zero

P, A = 5, 2
Q5 = LocalField(5)
RST = ["-a", "-p", "a*p", "t", "a*(p-t)", "-a*t*(p-t)"]


def rst_form(p=P):
    return DiagForm(QptField(p), [parse_qpt(s, p) for s in RST])


def at(q, place):
    return DiagForm(place.completion(), q.coeffs)


# --- forms and normalization ----------------------------------------------------

def test_zero_coefficient_rejected():
    with pytest.raises(ValidationError):
        DiagForm(Q5, [1, 0])


def test_normalize_examples():
    assert str(normalize(DiagForm(Q5, [4, 9]))) == "<1, 1>"
    X = QptField(5, "x")
    q = normalize(DiagForm(X, [parse_qpt("-a*p^2*x*(1-x)", 5, "x")]))
    assert symbolic_form(q, 5, A) == "<ax(x-1)>"  # -a x (1-x)
    assert str(normalize(DiagForm(QptField(5), [parse_qpt("t^3", 5)]))) == "<t>"


@given(st.lists(st.integers(-500, 500).filter(bool), min_size=1, max_size=5))
def test_normalize_idempotent_and_verdict_preserving(cs):
    q = DiagForm(Q5, cs)
    n = normalize(q)
    assert normalize(n) == n
    assert is_isotropic(n).status == is_isotropic(q).status


def test_json_round_trip():
    for q in (rst_form(), DiagForm(Q5, [1, -5, 10]), DiagForm(FiniteField(7), [1, 3])):
        assert form_from_json(q.to_json()) == q
    Z = FFRatField(5)
    q = DiagForm(Z, [Z.element((4, 1)), Z.element(2) / Z.element((0, 0, 1))])
    assert form_from_json(q.to_json()) == q


# --- Springer decompositions ----------------------------------------------------

def test_springer_at_t():
    d = springer_decompose(at(rst_form(), horizontal((0, 1), P)))
    assert symbolic_form(d.q1, P, A) == "<-a,-p,ap,ap>"
    assert symbolic_form(d.q2, P, A) == "<1,-ap>"


def test_springer_at_special_fibre():
    d = springer_decompose(at(rst_form(), special_fibre(P)))
    assert symbolic_form(d.q1, P, A, reduced=True) == "<-a,t,-at,a>"
    assert symbolic_form(d.q2, P, A) == "<-1,a>"


def test_springer_all_units():
    d = springer_decompose(DiagForm(Q5, [1, 2, 3]))
    assert d.q2.rank == 0 and str(d.q1) == "<1, 2, -2>"  # signed residues


@given(st.lists(st.tuples(st.integers(1, 4), st.integers(0, 3)), min_size=1, max_size=6))
def test_springer_ranks_add_up(entries):
    q = DiagForm(Q5, [u * 5 ** e for u, e in entries])
    d = springer_decompose(q)
    assert d.q1.rank + d.q2.rank == q.rank


def test_two_param_obstruction():
    with pytest.raises(NonNormalCrossings) as exc:
        two_param_decompose(rst_form(), 0)
    assert str(exc.value.offending) == "-2*(t-5)"  # a(p - t)


def test_two_param_after_substitution():
    s = substitute(rst_form(), "t=5x", normalized=False)
    assert symbolic_form(s, P, A) == "<-a,-p,ap,px,-ap(x-1),ap^2x(x-1)>"
    tp = two_param_decompose(s, 0)
    assert [f.rank for f in tp.forms()] == [1, 1, 3, 1]
    assert [str(f) for f in tp.forms()] == ["<-2>", "<2*(x-1)>", "<-1, 2, -2*(x-1)>", "<1>"]


def test_two_param_unit_form():
    tp = two_param_decompose(DiagForm(QptField(5), [parse_qpt("1+t", 5), parse_qpt("2", 5)]), 0)
    assert tp.q1.rank == 2 and tp.q2.rank == tp.q3.rank == tp.q4.rank == 0


# --- the engine -----------------------------------------------------------------

def test_hyperbolic_plane():
    for F in (Q5, FiniteField(5), FFRatField(5)):
        v = is_isotropic(DiagForm(F, [1, -1]))
        assert v.isotropic and [str(x) for x in v.witness] == ["1", "1"]


def test_minus_one_a_a_over_q5():
    v = is_isotropic(DiagForm(Q5, [-1, A, A]))
    assert v.isotropic


def _blowup_q2(F):
    return [F.element(-1), F.element(A), F.element((0, 1)), F.element((A, -A))]


def test_completion_at_infinity_anisotropic_with_replay():
    Z = FFRatField(5, "x")
    v = is_isotropic(DiagForm(Z.place(None), _blowup_q2(Z)))
    assert v.anisotropic
    chain = v.chain()
    assert chain[0]["q1"] == "<-1, 2>" and chain[0]["q2"] == "<1, -2>"
    assert replay(v)


def test_global_ffz_anisotropic_via_infinity():
    Z = FFRatField(5, "x")
    v = is_isotropic(DiagForm(Z, _blowup_q2(Z)))
    assert v.anisotropic and v.rule == "hasse-minkowski" and str(v.place) == "1/x"
    assert replay(v)


def test_rank_nine_ffz():
    Z = FFRatField(5)
    rng = random.Random(0)
    q = DiagForm(Z, [Z.element(tuple(rng.randrange(5) for _ in range(3)) + (1,)) for _ in range(9)])
    assert is_isotropic(q).isotropic


def test_global_qpt_unsupported():
    v = is_isotropic(rst_form())
    assert v.status is Status.UNSUPPORTED


def test_witness_search_examples():
    F5 = FiniteField(5)
    assert isotropy_witness_search(DiagForm(F5, [-1, 2, 2])) == (F5(2), F5(1), F5(1))
    assert isotropy_witness_search(DiagForm(F5, [-1, 2])) is None
    assert finite_zero([-1, 2], 5) is None
    assert tuple(int(x.index()) for x in isotropy_witness_search(DiagForm(F5, [1, -1]))) == (1, 1)


def test_finite_engine_matches_bruteforce():
    for p in (3, 5, 7):
        F = FiniteField(p)
        for n in (1, 2, 3):
            for cs in __import__("itertools").product(range(1, p), repeat=n):
                assert is_isotropic(DiagForm(F, list(cs))).isotropic == (finite_zero(cs, p) is not None)


# --- properties -----------------------------------------------------------------

padic = st.tuples(st.integers(1, 6), st.integers(0, 2)).map(lambda t: (t[0] % 7 or 1) * 7 ** t[1])
forms7 = st.lists(padic, min_size=1, max_size=5)
Q7 = LocalField(7)


@given(forms7, st.integers(1, 6), st.randoms(use_true_random=False))
def test_scaling_and_permutation_invariance(cs, c, rnd):
    q = DiagForm(Q7, cs)
    base = is_isotropic(q).status
    assert is_isotropic(q.scaled(Q7.element(c * 7))).status == base
    order = list(range(q.rank))
    rnd.shuffle(order)
    assert is_isotropic(q.permuted(order)).status == base


@given(forms7, forms7)
def test_monotonicity(c1, c2):
    q, r = DiagForm(Q7, c1), DiagForm(Q7, c2)
    if is_isotropic(q).isotropic:
        assert is_isotropic(q.perp(r)).isotropic
    assert is_isotropic(q.perp(DiagForm(Q7, [1, -1]))).isotropic


@given(forms7)
def test_shortcuts_agree_with_recursion(cs):
    q = DiagForm(Q7, cs)
    assert is_isotropic(q, shortcuts=True).status == is_isotropic(q, shortcuts=False).status


@given(forms7)
def test_springer_equivalence(cs):
    q = DiagForm(Q7, cs)
    d = springer_decompose(q)
    sub = any(is_isotropic(f).isotropic for f in (d.q1, d.q2) if f.rank)
    assert is_isotropic(q).isotropic == sub


@given(forms7)
def test_classical_route_agrees(cs):
    q = DiagForm(Q7, cs)
    assert classical_is_isotropic(q) == is_isotropic(q).isotropic


@given(forms7)
def test_anisotropic_certificates_replay(cs):
    v = is_isotropic(DiagForm(Q7, cs))
    if v.anisotropic:
        assert replay(v)


def test_local_search_agrees_on_small_sample():
    rng = random.Random(5)
    for _ in range(40):
        p = rng.choice([3, 5])
        K = LocalField(p)
        q = DiagForm(K, [rng.randrange(1, p) * p ** rng.randrange(2) for _ in range(rng.randint(1, 4))])
        res = local_search(q, max_level=6)
        assert res.status != "inconclusive"
        assert (res.status == "witness") == is_isotropic(q).isotropic
