import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import SPECS
from minionlab.specfile import SpecSyntaxError, build, load, open_minion, parse


@pytest.mark.parametrize(
    "name,sizes",
    [("E2", [1, 3, 7]), ("NAZ", [2, 6, 40]), ("G", [1, 3, 6]), ("D", [2, 9, 34]), ("X", [1, 2, 3])],
)
def test_example_specs(name, sizes):
    M = open_minion(str(SPECS / f"{name}.spec"))
    assert M.name == name
    assert [M.size(n) for n in (1, 2, 3)] == sizes


@pytest.mark.parametrize("name", ["E2", "NAZ", "G", "D", "X"])
def test_print_parse_roundtrip(name):
    spec = load(SPECS / f"{name}.spec")
    assert parse(spec.text()) == spec
    assert parse(spec.text()).text() == spec.text()


@st.composite
def presented_texts(draw):
    gens = [(f"g{i}", draw(st.integers(1, 3))) for i in range(draw(st.integers(1, 3)))]
    lines = ["name M", "kind presented"] + [f"gen {s} {a}" for s, a in gens]
    for _ in range(draw(st.integers(0, 3))):
        (s, a), (t, b) = draw(st.sampled_from(gens)), draw(st.sampled_from(gens))
        m = draw(st.integers(1, 3))
        al = draw(st.lists(st.integers(0, m - 1), min_size=a, max_size=a))
        be = draw(st.lists(st.integers(0, m - 1), min_size=b, max_size=b))
        lines.append(f"rel {s} ({' '.join(map(str, al))}|{m}) = {t} ({' '.join(map(str, be))}|{m})")
    return "\n".join(lines) + "\n"


@st.composite
def function_texts(draw):
    a, b = draw(st.integers(1, 3)), draw(st.integers(2, 12))
    lines = ["name F", "kind function", f"domain {a} {b}", "mode generated"]
    for _ in range(draw(st.integers(1, 2))):
        n = draw(st.integers(1, 2))
        vals = draw(st.lists(st.integers(0, b - 1), min_size=a**n, max_size=a**n))
        lines.append(f"elem {n} {','.join(map(str, vals))}")
    return "\n".join(lines) + "\n"


@given(st.one_of(presented_texts(), function_texts()))
def test_generated_specs_roundtrip(text):
    spec = parse(text)
    assert parse(spec.text()) == spec


@given(presented_texts())
def test_comments_and_blank_lines_are_ignored(text):
    noisy = "# header\n\n" + text.replace("\n", "   # note\n")
    assert parse(noisy) == parse(text)


@pytest.mark.parametrize(
    "text,line,column",
    [
        ("name B\nkind presented\ngen f 2\nrel f (0 0|2) = g (1 1|2)\n", 4, 5),
        ("name B\nkind derived\nexpr product(E2,, P)\n", 3, 17),
        ("name A\nkind presented\ngen f 0\n", 3, 5),
        ("name A\nkind wat\n", 2, 6),
        ("kind presented\ngen f 2\n", 1, 1),
        ("name A\nkind function\ndomain 2 2\nmode generated\nelem 2 0102\n", 5, 6),
        ("name A\nkind function\ndomain 2 2\nmode generated\nelem 2 010\n", 5, 6),
        ("name A\nkind derived\nexpr restrict(P, x)\n", 3, 18),
        ("name A\nname B\n", 2, 1),
        ("name A\nkind presented\nfrob 3\n", 3, 1),
        ("name A\nkind derived\nexpr sum(P, CONST)\ndomain 2 2\n", 4, 1),
        ("name A\nkind catalog\ncatalog NOPE(1)\n", 3, 9),
        ("name A\nkind presented\ngen f 2\nrel f (0 2|2) = f (0 0|2)\n", 4, 5),
    ],
)
def test_errors_have_positions(text, line, column):
    with pytest.raises(SpecSyntaxError) as err:
        parse(text)
    assert (err.value.line, err.value.column) == (line, column)
    assert str(err.value).startswith(f"line {line}, column {column}: ")


def test_catalog_specs():
    spec = parse("name K\nkind catalog\ncatalog KM(3, 4)\n")
    assert spec.text() == "name K\nkind catalog\ncatalog KM(3,4)\n"
    assert build(spec).size(3) == 10
    assert build(parse("name O(2,2)\nkind catalog\n")).size(2) == 16


def test_derived_operands_resolve_next_to_the_file(tmp_path):
    (tmp_path / "A.spec").write_text("name A\nkind presented\ngen f 2\nrel f (0 1|2) = f (1 0|2)\n")
    (tmp_path / "B.spec").write_text("name B\nkind derived\nexpr product(A, KM(3))\n")
    M = open_minion(str(tmp_path / "B.spec"))
    assert [M.size(n) for n in (1, 2, 3)] == [1, 6, 24]


def test_inline_expressions_and_unknown_names():
    assert open_minion("sum(P, CONST)").size(2) == 3
    with pytest.raises(ValueError):
        open_minion("NOT_A_THING")
    with pytest.raises(SpecSyntaxError):
        open_minion("sum(P,)")
