import pytest
from hypothesis import given
from hypothesis import strategies as st

from minionlab.catalog import free, symmetric_binary
from minionlab.minors import MinorOp
from minionlab.presented import (
    PPSyntaxError,
    Presentation,
    PresentedMinion,
    free_minion,
    pp_gadget,
    pp_parse,
    pp_text,
    product_with_projection_power,
    sum_presentation,
)

import oracles


@st.composite
def presentations(draw):
    k = draw(st.integers(1, 2))
    gens = [(f"g{i}", draw(st.integers(1, 3))) for i in range(k)]
    rels = []
    for _ in range(draw(st.integers(0, 3))):
        (s, a), (t, b) = draw(st.sampled_from(gens)), draw(st.sampled_from(gens))
        m = draw(st.integers(1, 3))
        al = tuple(draw(st.lists(st.integers(0, m - 1), min_size=a, max_size=a)))
        be = tuple(draw(st.lists(st.integers(0, m - 1), min_size=b, max_size=b)))
        rels.append(((s, al, m), (t, be, m)))
    return gens, rels


def _build(gens, rels) -> PresentedMinion:
    P = Presentation.of(gens, [((s, MinorOp(al, m)), (t, MinorOp(be, m))) for (s, al, m), (t, be, _) in rels])
    return PresentedMinion(P, "M")


@given(presentations())
def test_sizes_match_word_closure(case):
    gens, rels = case
    M = _build(gens, rels)
    for n in (1, 2, 3):
        assert M.size(n) == oracles.presented_size(gens, rels, n)


@given(presentations(), st.integers(1, 3))
def test_word_of_rebuilds_elements(case, n):
    M = _build(*case)
    for f in M.elements(n):
        i, al = M.word_of(f)
        assert M.act(M.generators()[i], al) == f


@pytest.mark.parametrize("k", [1, 2, 3])
def test_free_minion_sizes(k):
    M = free(k)
    assert [M.size(n) for n in (1, 2, 3, 4)] == [n**k for n in (1, 2, 3, 4)]


def test_symmetric_binary_counts_multisets():
    C = symmetric_binary()
    assert [C.size(n) for n in range(1, 6)] == [oracles.multisets(n, 2) for n in range(1, 6)]


def test_two_free_generators():
    M = free_minion([("f", 2), ("g", 1)])
    assert M.size(3) == 9 + 3


def test_projection_power_adds_unary_generators():
    P = Presentation.of([("f", 2)], [(("f", "(0 1|2)"), ("f", "(1 0|2)"))])
    Q = product_with_projection_power(P, 2)
    assert len(Q.generators) == len(P.generators)
    assert PresentedMinion(Q, "Q").size(1) == oracles.presented_size(
        [("f", 4)], [(("f", (0, 1, 2, 3), 4), ("f", (0, 1, 3, 2), 4))], 1
    )


def test_sum_presentation_adds_sizes():
    P = Presentation.of([("f", 2)], [(("f", "(0 1|2)"), ("f", "(1 0|2)"))])
    Q = Presentation.of([("g", 1)])
    S = PresentedMinion(sum_presentation(P, Q), "S")
    assert [S.size(n) for n in (1, 2, 3)] == [1 + 1, 3 + 2, 6 + 3]


def test_relation_validation():
    with pytest.raises(ValueError):
        Presentation.of([("f", 2), ("f", 1)])
    with pytest.raises(ValueError):
        Presentation.of([("f", 2)], [(("f", "(0|1)"), ("f", "(0 0|1)"))])
    with pytest.raises(ValueError):
        Presentation.of([("f", 1)], [(("f", "(0|1)"), ("f", "(0|2)"))])
    with pytest.raises(ValueError):
        Presentation.of([("f", 1)], [(("g", "(0|1)"), ("f", "(0|1)"))])


SENTENCES = [
    "exists f:2 . f(0 1|2) = f(1 0|2)",
    "exists f:3, g:2 . f(0 0 1|2) = g(0 1|2) & g(0 1|2) = g(1 0|2)",
    "exists f:4 . f(0 1 2 0|3) = f(1 0 1 2|3)",
]


@pytest.mark.parametrize("text", SENTENCES)
def test_pp_roundtrip(text):
    P = pp_parse(text)
    assert pp_parse(pp_text(P)) == P


@pytest.mark.parametrize(
    "text,pos",
    [("f(0|1) = f(0|1)", 0), ("exists f:2 . f(0 1|2) = f(0 1 2|3)", 24), ("exists f:2 . f(0 1|2) ! f(1 0|2)", 22)],
)
def test_pp_errors_report_positions(text, pos):
    with pytest.raises(PPSyntaxError) as err:
        pp_parse(text)
    assert err.value.position == pos


def test_gadget_is_presented():
    G = pp_gadget(SENTENCES[0])
    assert G.size(2) == 3
