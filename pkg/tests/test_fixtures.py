import random

import pytest

from isoquad.fields import FFRatField, LocalField
from isoquad.fixtures import FIXTURES, check_fixture, load_pins, resolve, symbol_chain
from isoquad.qform import DiagForm, is_isotropic
from isoquad.qform.engine import evaluate
from isoquad.qform.witness import ffz_evaluate_is_zero, ffz_search, local_search


ALIASES = [FIXTURES[n].aliases[0] for n in sorted(FIXTURES)]


@pytest.mark.parametrize("name", ALIASES)
def test_fixture_passes_at_p5(name):
    res = check_fixture(name, 5)
    assert res.passed, res.diffs


@pytest.mark.parametrize("name,p", [
    ("albert-chart", 7), ("albert-chart", 13),
    ("g2-symbol", 3), ("g2-symbol", 7), ("g2-symbol", 13),
    ("one-minus-x", 3), ("one-minus-x", 7), ("one-minus-x", 13),
])
def test_fixture_other_primes(name, p):
    kw = {"samples": 30} if name == "one-minus-x" else {}
    res = check_fixture(name, p, **kw)
    assert res.passed, res.diffs


def test_input_hashes_pinned():
    pins = load_pins()
    for name, fx in FIXTURES.items():
        assert pins[name]["input_hash"] == fx.input_hash()


def test_aliases_resolve():
    assert resolve("albert-chart") is resolve("biquaternion-division")
    assert resolve("pencil") is resolve("intersection-of-quadrics")
    with pytest.raises(KeyError):
        resolve("nope")


def test_blowup_discrepancy_note_present():
    notes = " ".join(load_pins()[resolve("albert-chart").name]["notes"])
    assert "-ax(1-x)" in notes.replace(" ", "") or "x(1-x)" in notes


def test_symbol_chain_steps():
    ch = symbol_chain(5)
    assert str(ch["alpha"]) == "(t) ∪ (2) ∪ (5)"
    assert [str(e) for e in ch["first_residue"]] == ["x", "2"]
    assert str(ch["on_z"]) == "((z+1)*(z-1)) ∪ (2)"
    assert str(ch["second_residue"]) == "(2)"


def test_oracles_never_contradict_anisotropic_verdicts():
    rng = random.Random(21)
    for _ in range(60):
        p = rng.choice([3, 5, 7])
        K = LocalField(p)
        q = DiagForm(K, [rng.randrange(1, p) * p ** rng.randrange(2) for _ in range(rng.randint(2, 4))])
        v = is_isotropic(q)
        res = local_search(q, max_level=5)
        if res.status == "witness":
            assert not v.anisotropic
    Z = FFRatField(3)
    atoms = [Z.element(x) for x in [(0, 1), (2, 1), (1, 1)]] + [Z.element(2)]
    for _ in range(40):
        cs = []
        for _ in range(rng.randint(2, 4)):
            c = Z.element(rng.choice([1, 2]))
            for at in rng.sample(atoms, rng.randint(0, 2)):
                c = c * at
            cs.append(c)
        q = DiagForm(Z, cs)
        w = ffz_search(q, max_degree=4)
        if w is not None:
            assert ffz_evaluate_is_zero(q, w)
            assert not is_isotropic(q).anisotropic


def test_verdict_witnesses_evaluate_to_zero():
    K = LocalField(5)
    for cs in ([1, -1], [-1, 2, 2], [1, 1, 1, 1, 1]):
        v = is_isotropic(DiagForm(K, cs))
        if v.witness is not None:
            assert evaluate(DiagForm(K, cs), v.witness) == 0


def test_albert_chart_at_p3_verdicts():
    # a = 2 = -1 mod 3, so residue strings print a as -1; the verdicts still match
    obs = check_fixture("albert-chart", 3).observed
    assert obs["certificate"] == "(3) on chart t=3x"
    assert obs["division"] is True
