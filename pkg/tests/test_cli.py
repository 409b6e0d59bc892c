import json
import subprocess
import sys

import pytest

from isoquad import fixtures
from isoquad.cli import main
from isoquad.fields import LocalField
from isoquad.qform import DiagForm, is_isotropic


def run(argv, capsys):
    code = main(argv + ["--json"])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_isotropy_examples(capsys):
    code, doc = run(["isotropy", "--field", "qp", "--p", "5", "--form", "-1,a,a"], capsys)
    assert code == 0 and doc["status"] == "isotropic" and doc["schema"] == 1
    code, doc = run(["isotropy", "--field", "ffz", "--p", "5", "--form", "-1,a,x,a*(1-x)"], capsys)
    assert code == 0 and doc["status"] == "anisotropic"
    assert doc["verdict"]["place"] == "1/x"
    code, doc = run(["isotropy", "--field", "qp", "--p", "5", "--form", "1,-1"], capsys)
    assert code == 0 and doc["status"] == "isotropic"


def test_exit_codes(capsys):
    assert main(["isotropy", "--field", "qpt", "--form", "t,1"]) == 2
    assert main(["isotropy", "--form", "1,2*"]) == 1
    assert main(["isotropy", "--p", "4", "--form", "1,1"]) == 1
    assert main(["isotropy", "--form", "1,0"]) == 1
    assert main(["symbol", "--entries", "z^2-1,w", "--residue-at", "z-1"]) == 1
    capsys.readouterr()


def test_report_and_out_file(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["report", "--p", "5", "--form", "-a,-p,a*p,t,a*(p-t),-a*t*(p-t)",
                 "--out", str(out)])
    capsys.readouterr()
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["schema"] == 1
    assert doc["summary"]["anisotropy_certificate"] == "(5) on chart t=5x"
    assert [e["place"]["name"] for e in doc["entries"]][:4] == ["(t)", "(t-5)", "(1/t)", "(5)"]


def test_form_from_file(tmp_path, capsys):
    q = DiagForm(LocalField(5), [1, -5, 10])
    path = tmp_path / "form.json"
    path.write_text(json.dumps(q.to_json()))
    code, doc = run(["isotropy", "--form", str(path)], capsys)
    assert code == 0 and doc["status"] == is_isotropic(q).status.value


def test_determinism(tmp_path, capsys):
    docs = []
    for i in range(2):
        path = tmp_path / f"r{i}.json"
        main(["appendix", "--p", "5", "--samples", "20", "--seed", "3", "--out", str(path)])
        docs.append(path.read_bytes())
    capsys.readouterr()
    assert docs[0] == docs[1]


def test_albert_and_symbol(capsys):
    code, doc = run(["albert", "--p", "5", "--slots", "a,p,t,a*(p-t)"], capsys)
    assert code == 0 and doc["division"] is True
    code, doc = run(["symbol", "--field", "fp-ratfunc", "--p", "5", "--entries", "z^2-1,u",
                     "--residue-at", "z-1"], capsys)
    assert code == 0 and doc["a"] == 2
    assert doc["residue"] == "(2)" and doc["residue_field"] == "F_5"
    assert doc["residue_nontrivial"] is True


def test_pencil_command(capsys):
    code, doc = run(["pencil", "--p", "5", "--u", "2", "--s", "2"], capsys)
    assert code == 0 and doc["search"]["no_primitive_solution"] is True


def test_oracles(capsys):
    code, doc = run(["oracle", "mod-pn-search", "--p", "5", "--form", "-1,2", "--N", "8"], capsys)
    assert code == 0 and doc["result"]["status"] == "none"
    code, doc = run(["oracle", "ffz-degree-search", "--p", "5", "--form", "1,-1"], capsys)
    assert code == 0 and doc["witness"] == ["1", "1"]
    code, doc = run(["oracle", "square-table", "--p", "5"], capsys)
    assert code == 0 and doc["squares"] == [1, 4]


def test_fixture_list_and_pass(capsys):
    code, doc = run(["fixture", "list"], capsys)
    assert code == 0
    assert set(doc["fixtures"]) == {"remark-3-6", "remark-3-8", "symbol-g2",
                                                    "appendix-curve"}
    code, doc = run(["fixture", "albert-chart", "--p", "5"], capsys)
    assert code == 0 and doc["passed"]
    code, doc = run(["fixture", "one-minus-x", "--p", "5", "--samples", "100"], capsys)
    assert code == 0 and doc["passed"]


def test_fixture_mismatch_exit_3(monkeypatch, capsys):
    pins = fixtures.load_pins()
    pins["symbol-g2"]["expect"]["second_residue"] = "(3)"
    monkeypatch.setattr(fixtures, "load_pins", lambda: pins)
    code, doc = run(["fixture", "symbol-g2"], capsys)
    assert code == 3
    assert doc["diffs"] == [{"key": "second_residue", "expected": "(3)", "observed": "(2)"}]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "isoquad", "oracle", "square-table", "--p", "7"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert "squares" in res.stdout


@pytest.mark.parametrize("flag", ["--form", "--entries"])
def test_negative_leading_values_survive(flag, capsys):
    argv = ["isotropy", "--form", "-1,-1,-1"] if flag == "--form" else [
        "symbol", "--field", "qp", "--entries", "-1,5"]
    code, doc = run(argv, capsys)
    assert code == 0
