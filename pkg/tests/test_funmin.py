import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from minionlab import kernels
from minionlab.base import Element, ForeignElementError
from minionlab.catalog import functions, idempotents, near_unanimity_minion, near_unanimity_table
from minionlab.funmin import (
    FunctionMinion,
    RelationPair,
    Structure,
    generated,
    in_inv,
    is_clone,
    min_invariant_companion,
    pol,
    pol_structures,
    preserves,
    projection_relation,
    reconstruct_from_projection_pairs,
    seed_identities,
    structure_homs,
    table_index,
)
from minionlab.minors import MinorOp, all_maps, compose
from minionlab.presented import PresentedMinion

import oracles


@st.composite
def table_and_maps(draw):
    a = draw(st.integers(2, 3))
    b = draw(st.integers(2, 3))
    n = draw(st.integers(1, 3))
    k = draw(st.integers(1, 3))
    m = draw(st.integers(1, 3))
    t = bytes(draw(st.lists(st.integers(0, b - 1), min_size=a**n, max_size=a**n)))
    al = MinorOp(tuple(draw(st.lists(st.integers(0, k - 1), min_size=n, max_size=n))), k)
    be = MinorOp(tuple(draw(st.lists(st.integers(0, m - 1), min_size=k, max_size=k))), m)
    return a, b, n, t, al, be


@given(table_and_maps())
def test_minor_action_matches_definition(case):
    a, b, n, t, al, _ = case
    O = functions(a, b)
    f = O.fn(t, n)
    assert O.act(f, al).payload == oracles.minor(t, a, al.values, al.codomain)


@given(table_and_maps())
def test_minor_action_is_functorial(case):
    a, b, n, t, al, be = case
    O = functions(a, b)
    f = O.fn(t, n)
    assert O.act(O.act(f, al), be) == O.act(f, compose(al, be))
    assert O.act(f, MinorOp(tuple(range(n)), n)) == f


def test_full_sizes():
    assert [functions(2, 2).size(n) for n in (1, 2, 3)] == [4, 16, 256]
    assert [functions(3, 2).size(n) for n in (1, 2)] == [8, 512]
    assert [idempotents(2).size(n) for n in (1, 2, 3)] == [1, 4, 64]
    assert [idempotents(3).size(n) for n in (1, 2)] == [1, 3**6]


def test_elements_are_owned():
    O, J = functions(2, 2), idempotents(2)
    f = O.elements(2)[0]
    with pytest.raises(ForeignElementError):
        J.check(f)
    with pytest.raises(ValueError):
        O.fn(b"\x00\x02\x00\x00", 2)


def test_table_index_is_lexicographic():
    assert [table_index(x, 3) for x in oracles.points(3, 2)] == list(range(9))


@pytest.mark.parametrize("S", [(3,), (4,), (3, 4), (3, 5)])
def test_generated_matches_closure(S):
    M = near_unanimity_minion(S)
    ref = oracles.minor_closure([(s, near_unanimity_table(s)) for s in S], 2, 4)
    for n in range(1, 5):
        assert {f.payload for f in M.elements(n)} == ref[n]


def test_frozen_growth():
    assert [near_unanimity_minion([3]).size(n) for n in range(1, 6)] == [1, 2, 4, 8, 15]
    assert [near_unanimity_minion([3, 4]).size(n) for n in range(1, 5)] == [1, 3, 10, 27]


@pytest.mark.parametrize("ar,tab", [(3, near_unanimity_table(3)), (2, bytes([0, 0, 0, 1])), (3, bytes([0, 1, 1, 0, 1, 0, 0, 1]))])
def test_seed_identities_hold_and_are_complete(ar, tab):
    ids = seed_identities(2, ar, tab, ar, tab, same=True)
    for al, be in ids:
        assert oracles.minor(tab, 2, al.values, al.codomain) == oracles.minor(tab, 2, be.values, be.codomain)
    # every identity into a small codomain factors through a listed one
    listed = {(al.values, be.values) for al, be in ids}
    for m in range(1, 2 * ar + 1):
        for av in oracles.maps(ar, m):
            for bv in oracles.maps(ar, m):
                if av == bv or oracles.minor(tab, 2, av, m) != oracles.minor(tab, 2, bv, m):
                    continue
                canon = {}
                for v in av + bv:
                    canon.setdefault(v, len(canon))
                key = (tuple(canon[v] for v in av), tuple(canon[v] for v in bv))
                assert key in listed


@pytest.mark.parametrize("S", [(3,), (3, 4)])
def test_presentation_route_matches_enumeration(S):
    M = near_unanimity_minion(S)
    P = PresentedMinion(M.presentation(), "presented")
    assert [P.size(n) for n in range(1, 5)] == [M.size(n) for n in range(1, 5)]


def test_word_of_rebuilds_elements():
    M = near_unanimity_minion([3, 4])
    gens = M.generators()
    for n in range(1, 4):
        for f in M.elements(n):
            i, al = M.word_of(f)
            assert M.act(gens[i], al) == f


NAZ = [(0, 1), (1, 0), (1, 1)]
EDGES = [(0, 1), (1, 0)]


@pytest.mark.parametrize("pairs", [[(NAZ, NAZ)], [(EDGES, EDGES)], [(NAZ, NAZ), ([(0,)], [(0,)])]])
def test_pol_matches_brute_force(pairs):
    rps = [RelationPair.of(R, S, 2, 2) for R, S in pairs]
    M = pol(rps)
    for n in range(1, 4):
        assert {f.payload for f in M.elements(n)} == oracles.polymorphisms(2, 2, n, pairs)


def test_preserves_agrees_with_oracle():
    rng = random.Random(7)
    pair = RelationPair.of(NAZ, NAZ, 2, 2)
    O = functions(2, 2)
    for _ in range(200):
        n = rng.randint(1, 4)
        t = bytes(rng.randint(0, 1) for _ in range(2**n))
        assert preserves(O.fn(t, n), pair) == oracles.preserves(t, 2, n, NAZ, NAZ)


def test_relation_pair_validation():
    with pytest.raises(ValueError):
        RelationPair.of([(0, 2)], [(0, 1)], 2, 2)
    with pytest.raises(ValueError):
        RelationPair.of([(0,), (0, 1)], [], 2, 2)
    p = RelationPair.of(NAZ, NAZ, 2, 2).product(RelationPair.of([(0,)], [(1,)], 2, 2))
    assert p.y == 3 and len(p.R) == 3


def test_invariant_companion():
    P = FunctionMinion(2, 2, "generated", seeds=[(1, bytes([0, 1]))])
    assert min_invariant_companion(P, NAZ) == frozenset(NAZ)
    O = functions(2, 2)
    assert min_invariant_companion(O, NAZ) == frozenset(oracles.points(2, 2))
    assert in_inv(pol([RelationPair.of(NAZ, NAZ, 2, 2)], max_arity=3), RelationPair.of(NAZ, NAZ, 2, 2))


def test_projection_relation_shape():
    rel = projection_relation(2, 2)
    assert len(rel) == 2 and all(len(t) == 4 for t in rel)
    assert rel == [tuple(x[i] for x in oracles.points(2, 2)) for i in range(2)]


def test_clone_checks():
    assert is_clone(functions(2, 2), 2)
    assert is_clone(pol([RelationPair.of(NAZ, NAZ, 2, 2)], max_arity=3))
    bad = FunctionMinion(2, 2, "generated", seeds=[(2, bytes([0, 1, 1, 0]))])
    check = is_clone(bad, 2)
    assert not check and check.counterexample[0] == "projection"


def test_reconstruction_from_projection_pairs():
    assert reconstruct_from_projection_pairs(near_unanimity_minion([3]), 3)
    assert reconstruct_from_projection_pairs(idempotents(2), 2)


def test_structures():
    K2 = Structure.of(2, {"E": EDGES})
    assert structure_homs(K2, K2) == [(0, 1), (1, 0)]
    M = pol_structures(K2, K2, max_arity=3)
    assert [M.size(n) for n in (1, 2, 3)] == [2, 4, 16]


@pytest.mark.parametrize("name", sorted(kernels.backends()))
def test_kernel_backends_agree(name):
    impl = kernels.backends()[name]
    ref = kernels.backends()["python"]
    rng = random.Random(3)
    for _ in range(100):
        a, n, k = rng.randint(2, 3), rng.randint(1, 4), rng.randint(1, 4)
        vals = tuple(rng.randrange(k) for _ in range(n))
        idx = impl.minor_index(a, vals, k)
        assert list(idx) == list(ref.minor_index(a, vals, k))
        t = bytes(rng.randrange(2) for _ in range(a**n))
        assert impl.apply_index(t, list(idx)) == oracles.minor(t, a, vals, k)
    rel = RelationPair.of(NAZ, NAZ, 2, 2).encoded
    for n in range(1, 4):
        assert impl.pol_tables(2, 2, n, [rel], 10**6) == ref.pol_tables(2, 2, n, [rel], 10**6)
        for t in oracles.points(2, 2**n):
            got = impl.preserves(bytes(t), 2, n, rel[0], rel[1], rel[2], rel[3], 2, 10**6)
            assert got == int(oracles.preserves(t, 2, n, NAZ, NAZ))


def test_pure_fallback_is_selectable():
    import subprocess
    import sys

    out = subprocess.run(
        [sys.executable, "-c", "from minionlab import kernels; print(kernels.BACKEND)"],
        env={"MINIONLAB_PURE": "1", "PATH": ""},
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "python"
