import pytest
from hypothesis import given
from hypothesis import strategies as st

from minionlab.base import CutoffError, Element
from minionlab.catalog import free, functions, idempotents, near_unanimity_minion, projections, symmetric_binary, terminal
from minionlab.construct import (
    ExponentialMinion,
    ProductMinion,
    SumMinion,
    curry,
    distribute,
    product_of,
    reflection,
    restrict_unary,
    subtract,
    sum_of,
    unary_decompose,
    uncurry,
)
from minionlab.funmin import FunctionMinion
from minionlab.homsearch import decide

FACTORIES = {
    "P": projections,
    "CONST": terminal,
    "C2": symmetric_binary,
    "F2": lambda: free(2),
    "KM3": lambda: near_unanimity_minion([3]),
    "J2": lambda: idempotents(2),
}
names = st.sampled_from(sorted(FACTORIES))


@given(names, names, st.integers(1, 3))
def test_product_and_sum_sizes(x, y, n):
    M, N = FACTORIES[x](), FACTORIES[y]()
    assert ProductMinion(M, N).size(n) == M.size(n) * N.size(n)
    assert SumMinion(M, N).size(n) == M.size(n) + N.size(n)


@given(names, names)
def test_structure_maps_are_homs(x, y):
    M, N = FACTORIES[x](), FACTORIES[y]()
    for h in ProductMinion(M, N).projections() + SumMinion(M, N).injections():
        assert not h.failures(3)


def test_empty_combinations():
    assert sum_of([]).is_empty()
    assert product_of([]).size(3) == 1


def test_cutoffs_propagate():
    M = ProductMinion(functions(2, 2), FunctionMinion(2, 2, cutoff=2))
    assert M.cutoff == 2
    with pytest.raises(CutoffError):
        M.elements(3)


@pytest.mark.parametrize("name", sorted(FACTORIES))
def test_unary_decomposition_partitions(name):
    M = FACTORIES[name]()
    parts = unary_decompose(M)
    for n in (1, 2, 3):
        assert sum(C.size(n) for _, C in parts) == M.size(n)


def test_restriction_of_functions():
    O = functions(2, 2)
    units = O.elements(1)
    assert [restrict_unary(O, u).size(2) for u in units] == [4, 4, 4, 4]
    assert [restrict_unary(O, u).size(3) for u in units] == [64, 64, 64, 64]


def test_reflection_is_a_hom():
    src, tgt = functions(2, 2), functions(3, 2)
    h = reflection((0, 1, 1), (0, 1), src, tgt)
    assert not h.failures(3)
    ident = reflection((0, 1), (0, 1), src, src)
    f = src.elements(2)[5]
    assert ident(f) == f
    with pytest.raises(ValueError):
        reflection((0, 2), (0, 1), src, src)


@pytest.mark.parametrize("name", ["P", "C2", "KM3", "J2"])
def test_exponent_laws_by_size(name):
    N = FACTORIES[name]()
    for n in (1, 2):
        assert ExponentialMinion(N, free(2)).size(n) == N.size(n + 2)
        assert ExponentialMinion(N, projections()).size(n) == N.size(n + 1)
        assert ExponentialMinion(N, terminal()).size(n) == N.size(n)


def test_curry_roundtrip():
    L, M = symmetric_binary(), free(2)
    P = ProductMinion(L, M)
    B = P.projections()[1]
    A = curry(B)
    assert not A.failures(3)
    back = uncurry(A)
    for n in (1, 2, 3):
        for x in back.source.elements(n):
            assert back(x).payload == B(Element(n, x.payload, P)).payload


def test_distributor_is_bijective():
    h = distribute(projections(), symmetric_binary(), terminal())
    assert not h.failures(3)
    assert h.is_injective(3) and h.is_surjective(3)


def test_subtract_keeps_components_without_maps():
    L = SumMinion(projections(), terminal())
    D = subtract(L, near_unanimity_minion([3]))
    assert [D.size(n) for n in (1, 2, 3)] == [1, 1, 1]
    assert decide(D, near_unanimity_minion([3])).value == "no"
    assert subtract(L, terminal()).is_empty()
