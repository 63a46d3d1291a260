import json

import pytest
from click.testing import CliRunner

from olg import __version__
from olg.cli import main
from olg.orbifold import FrobeniusReport, OrbifoldAlgebra

LOOP22 = "x1^2*x2 + x2^2*x1"


def run(*args):
    return CliRunner().invoke(main, list(args))


def run_json(*args):
    res = run(*args, "--format", "json")
    assert res.exit_code == 0, res.output
    return json.loads(res.output)


def test_classify_fermat():
    rep = run_json("classify", "x1^3")
    assert rep["atoms"] == ["Fermat(3)"] and rep["weights"] == ["1/3"] and rep["mu"] == 2
    assert rep["version"] == __version__ and rep["W"] == "x1^3"


def test_classify_loop():
    rep = run_json("classify", LOOP22)
    assert rep["atoms"] == ["Loop(2,2)"] and rep["weights"] == ["1/3", "1/3"] and rep["mu"] == 4


def test_classify_rejects():
    res = run("classify", "x1^2 + x1*x2")
    assert res.exit_code == 1
    assert "NotClassifiable" in res.output


def test_parse_error_exit_code():
    res = run("classify", "x1 x2")
    assert res.exit_code == 1 and "InvalidArgument" in res.output


@pytest.mark.parametrize("source, order", [("x1^3", 3), (LOOP22, 3), ('{"E": [[2, 1], [0, 2]]}', 4)])
def test_symmetry_orders(source, order):
    rep = run_json("symmetry", source)
    assert rep["group_order"] == order


def test_exponent_matrix_file(tmp_path):
    p = tmp_path / "chain.json"
    p.write_text(json.dumps({"E": [[2, 1], [0, 2]]}))
    rep = run_json("classify", str(p))
    assert rep["atoms"] == ["Chain(2,2)"]


def test_mirror():
    rep = run_json("mirror", '{"E": [[2, 1], [0, 2]]}')
    assert rep["mirror_exponent_matrix"] == [[2, 0], [1, 2]]
    assert rep["order_G_W"] == rep["order_G_WT"] == 4


def test_sectors_csv():
    res = run("sectors", "x1^3", "--format", "csv")
    assert res.exit_code == 0
    lines = res.output.strip().split("\n")
    assert lines[0] == "g,fixed,parity,dim,W_g,basis"
    assert lines[2].startswith("1/3,,1,1")


def test_product_fermat_table():
    rep = run_json("product", "x1^3", "--group", "full")
    hit = [t for t in rep["table"] if t["a"] == "(1)*1_[1/3]" and t["b"] == "(1)*1_[2/3]"]
    assert hit and hit[0]["product"] == "((2 + z3)*x1)*1_[0]"


def test_product_trivial_group():
    rep = run_json("product", "x1^3", "--group", "gens:")
    assert rep["group_order"] == 1
    assert {(t["a"], t["b"], t["product"]) for t in rep["table"]} == {
        ("(1)*1_[0]", "(1)*1_[0]", "(1)*1_[0]"),
        ("(1)*1_[0]", "(x1)*1_[0]", "(x1)*1_[0]"),
        ("(x1)*1_[0]", "(1)*1_[0]", "(x1)*1_[0]"),
    }


def test_product_oracle_and_invariant():
    rep = run_json("product", LOOP22, "--oracle", "--invariant")
    assert all(c["agree"] for c in rep["oracle"]) and len(rep["oracle"]) == 2
    assert "invariant_basis" in rep


def test_oracle_command():
    rep = run_json("oracle", "x1^2*x2 + x2^3")
    assert rep["agree"] is True and len(rep["checks"]) == 5
    assert rep["group_generators"] == ["1/6,2/3"]


def test_frobenius_pass_and_fail(monkeypatch):
    assert run("frobenius", "x1^3 + x2^3").exit_code == 0

    def broken(self):
        rep = FrobeniusReport()
        rep.record("unit", {"detail": "forced"})
        return rep

    monkeypatch.setattr(OrbifoldAlgebra, "check_g_frobenius", broken)
    res = run("frobenius", "x1^3")
    assert res.exit_code == 2
    assert "unit" in res.output


def test_out_file_and_determinism(tmp_path):
    out = tmp_path / "r.json"
    assert run("product", LOOP22, "--format", "json", "--out", str(out)).exit_code == 0
    first = out.read_text()
    assert run("product", LOOP22, "--format", "json", "--out", str(out)).exit_code == 0
    assert out.read_text() == first
    assert json.loads(first)["W"] == "x1^2*x2 + x1*x2^2"


def test_bracelab_builtin_and_fixture(tmp_path):
    rep = run_json("bracelab", "x2-z2", "--samples", "3", "--seed", "5", "--psi")
    assert rep["passed"] and rep["seed"] == 5 and rep["psi_comparison"]["agree"]
    from olg.bracelab import truncated_polynomial_algebra
    p = tmp_path / "alg.json"
    p.write_text(json.dumps(truncated_polynomial_algebra(3, 3, 1).to_json()))
    res = run("bracelab", str(p), "--samples", "2", "--format", "csv")
    assert res.exit_code == 0 and res.output.startswith("identity,passed,failed")
    assert run("bracelab", str(tmp_path / "missing.json")).exit_code == 1


def test_bad_group_spec():
    res = run("sectors", "x1^4", "--group", "gens:1/3")
    assert res.exit_code == 1 and "NotASymmetry" in res.output
