import pytest
from hypothesis import given
from hypothesis import strategies as st

from minionlab.minors import (
    MinorOp,
    all_maps,
    compose,
    copair,
    cycle,
    extension,
    identity,
    image_factorization,
    juxtapose_maps,
    monoid_closure,
    monoid_generators,
    parse_minor,
    point_map,
    surjections,
)

from oracles import stirling2


@st.composite
def maps_between(draw, n=None, k=None):
    n = n or draw(st.integers(1, 5))
    k = k or draw(st.integers(1, 5))
    return MinorOp(tuple(draw(st.lists(st.integers(0, k - 1), min_size=n, max_size=n))), k)


@st.composite
def chains(draw):
    n, k, m, p = (draw(st.integers(1, 4)) for _ in range(4))
    return draw(maps_between(n, k)), draw(maps_between(k, m)), draw(maps_between(m, p))


def test_validation():
    with pytest.raises(ValueError):
        MinorOp.of([2], 2)
    with pytest.raises(ValueError):
        MinorOp.of([], 1)
    with pytest.raises(ValueError):
        compose(MinorOp.of([0], 2), MinorOp.of([0], 1))


@given(maps_between())
def test_literal_roundtrip(alpha):
    assert parse_minor(alpha.literal()) == alpha


@pytest.mark.parametrize("text", ["(0 1 2)", "(|2)", "(0 3|3)", "0 1|2"])
def test_bad_literals(text):
    with pytest.raises(ValueError):
        parse_minor(text)


@given(chains())
def test_composition_is_associative(c):
    a, b, g = c
    assert compose(compose(a, b), g) == compose(a, compose(b, g))


@given(maps_between())
def test_identity_laws(alpha):
    assert compose(identity(alpha.domain), alpha) == alpha
    assert compose(alpha, identity(alpha.codomain)) == alpha


@given(maps_between())
def test_image_factorization(alpha):
    s, i = image_factorization(alpha)
    assert s.is_surjective() and i.is_injective()
    assert compose(s, i) == alpha


@pytest.mark.parametrize("n,k", [(1, 1), (3, 2), (4, 3), (5, 2), (2, 4)])
def test_map_counts(n, k):
    assert len(list(all_maps(n, k))) == k**n
    assert len(list(surjections(n, k))) == stirling2(n, k) * __import__("math").factorial(k)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_generators_give_full_monoid(n):
    assert len(monoid_closure(monoid_generators(n), n)) == n**n


def test_named_maps():
    assert cycle(3).values == (1, 2, 0)
    assert point_map(2, 0, 3).values == (0, 1, 0)
    assert extension(MinorOp.of([0, 0], 1)).literal() == "(0 0 1 | 2)"
    assert juxtapose_maps(identity(1), identity(2)) == identity(3)
    assert copair(MinorOp.of([1], 2), MinorOp.of([0], 2)).values == (1, 0)
