import json

import pytest
from click.testing import CliRunner

from conftest import SPECS
from minionlab.cli import main, run


def invoke(*args):
    return CliRunner().invoke(main, list(args))


def doc(*args):
    res = invoke(*args)
    return res.exit_code, json.loads(res.output)


def test_info_json():
    code, out = doc("info", "KM(3,4)")
    assert code == 0 and out["schema"] == 1 and out["command"] == "info"
    r = out["result"]
    assert r["alpha"] == [0, 1, 3, 10, 27] and r["bound"] == 4
    assert r["essential_arity"] == 4 and r["representable"]["holds"]


def test_output_is_deterministic():
    a = invoke("order", "P", "C2", "KM(3)").output
    b = invoke("order", "P", "C2", "KM(3)").output
    assert a == b


def test_growth_respects_cutoffs():
    code, out = doc("growth", "OMEGA(3)")
    assert code == 0 and out["result"]["alpha"] == [2, 2, 3, 10] and out["result"]["bound"] == 3
    assert invoke("--max-arity", "5", "growth", "OMEGA(3)").exit_code == 3


def test_hom_and_equiv():
    code, out = doc("hom", "KM(3)", "KM(4)")
    assert code == 0 and out["result"]["value"] == "no"
    code, out = doc("equiv", "O(2,2)", "CONST")
    assert code == 0 and out["result"]["equivalent"] == "yes"
    res = invoke("--text", "hom", "P", "C2")
    assert res.output.startswith("P -> C2: yes")


def test_core_text():
    res = invoke("--text", "core", "J(2)")
    assert res.exit_code == 0
    assert res.output.splitlines()[0].startswith("core(J(2)): sizes [1, 3]")


def test_exp_and_sub():
    code, out = doc("exp", "C2", "F(2)")
    assert out["result"]["sizes"] == [6, 10, 15]
    code, out = doc("sub", "sum(P,CONST)", "KM(3)")
    assert code == 0 and len(out["result"]["components"]) == 1
    code, out = doc("sub", "sum(P,CONST)", "CONST")
    assert out["result"]["empty"]


def test_order_dot_to_stdout():
    res = invoke("order", "P", "CONST", "--dot", "-")
    assert res.exit_code == 0
    assert res.output.startswith("digraph order {") and "c0 -> c1;" in res.output


def test_order_dot_to_file(tmp_path):
    path = tmp_path / "out.dot"
    code, out = doc("order", "EMPTY.spec", "P.spec", "C2.spec", "KM(3).spec", "J(2).spec", "CONST.spec", "--dot", str(path))
    assert code == 0 and path.read_text() == out["result"]["dot"]
    covers = {(out["result"]["names"][lo], out["result"]["names"][hi]) for lo, hi in out["result"]["covers"]}
    assert covers == {("EMPTY", "P"), ("P", "C2"), ("P", "KM(3)"), ("C2", "J(2)"), ("KM(3)", "J(2)"), ("J(2)", "CONST")}


def test_spec_suffix_falls_back_to_catalog():
    code, out = doc("hom", "KM(3,4).spec", "KM(3).spec")
    assert code == 0 and out["result"]["value"] == "no"
    code, out = doc("equiv", "NC(2,2).spec", "J(2).spec")
    assert code == 0 and out["result"]["equivalent"] == "yes"


def test_hom_enumerate():
    code, out = doc("hom", "F(2)", "C2", "--enumerate")
    assert code == 0 and out["result"]["count"] == 3 and out["result"]["exact"]
    assert [w["f"] for w in out["result"]["witnesses"]] == ["f(0 0|2)", "f(0 1|2)", "f(1 1|2)"]
    code, out = doc("hom", "F(2)", "C2", "--enumerate", "--limit", "1")
    assert len(out["result"]["witnesses"]) == 1


def test_hom_bound_is_reported():
    code, out = doc("hom", "KM(3)", "C2", "--bound", "2")
    assert code == 0 and out["query"]["bound"] == 2 and out["result"]["value"] == "no"


def test_local_flags_override_global():
    res = invoke("hom", "P", "C2", "--text")
    assert res.output.startswith("P -> C2: yes")
    code, out = doc("--text", "info", "P", "--json", "--max-arity", "3")
    assert out["result"]["alpha"] == [0, 1, 2, 3]


def test_pp():
    code, out = doc("pp", "symmetric-2", "--test", "C2")
    assert code == 0 and out["result"]["value"] == "yes"
    code, out = doc("pp", "exists f:2 . f(0 1|2) = f(1 0|2)", "--test", "KM(3)")
    assert out["result"]["value"] == "no"


@pytest.mark.parametrize(
    "args",
    [
        ["info", "NOPE"],
        ["pp", "symmetric-2"],
        ["pp", "nope", "--test", "C2"],
        ["pp", "exists f:2 . f(0|2) = f(1|2)", "--test", "C2"],
        ["check", "99"],
        ["check", "x"],
        ["hom", "P"],
        ["info", str(SPECS / "missing.spec")],
    ],
)
def test_usage_errors_exit_2(args):
    assert invoke(*args).exit_code == 2


def test_syntax_errors_name_the_position(tmp_path):
    bad = tmp_path / "bad.spec"
    bad.write_text("name B\nkind presented\ngen f 2\nrel f (0 0|2) = g (1 1|2)\n")
    res = invoke("info", str(bad))
    assert res.exit_code == 2 and "line 4, column 5" in res.output


def test_spec_files_are_operands():
    code, out = doc("info", str(SPECS / "NAZ.spec"))
    assert code == 0 and out["result"]["alpha"][1:4] == [2, 6, 40]


def test_check_reports_each_criterion():
    res = invoke("--text", "check", "3", "8")
    lines = res.output.splitlines()
    assert res.exit_code == 0 and len(lines) == 2
    assert lines[0].startswith("criterion  3 PASS") and lines[1].startswith("criterion  8 PASS")


def test_run_returns_codes():
    assert run(["--text", "hom", "P", "CONST"]) == 0
    assert run(["info", "NOPE"]) == 2
    assert run(["--max-arity", "5", "growth", "OMEGA(3)"]) == 3
