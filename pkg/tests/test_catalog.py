import pytest

from minionlab.catalog import (
    OmegaMinion,
    binf,
    binf_member,
    cosieve_kernel_sets,
    cosieves_by_closure,
    make,
    named_conditions,
    near_unanimity_table,
    omega,
    partitions,
    pol_k3,
)
from minionlab.minors import MinorOp, all_maps, compose
from minionlab.presented import pp_parse

import oracles


@pytest.mark.parametrize(
    "name,sizes",
    [
        ("P", [1, 2, 3]),
        ("CONST", [1, 1, 1]),
        ("EMPTY", [0, 0, 0]),
        ("O(2,2)", [4, 16, 256]),
        ("J(2)", [1, 4, 64]),
        ("NC(2,2)", [2, 8, 128]),
        ("KM(3)", [1, 2, 4]),
        ("C2", [1, 3, 6]),
        ("F(2)", [1, 4, 9]),
        ("OMEGA(3)", [2, 3, 10]),
    ],
)
def test_make(name, sizes):
    M = make(name)
    assert [M.size(n) for n in (1, 2, 3)] == sizes


@pytest.mark.parametrize("name", ["Q", "O(2)", "KM()", "KM(2)", "J(0)", "O(2,2,2)", "P(1)", "12"])
def test_make_rejects(name):
    with pytest.raises(ValueError):
        make(name)


def test_near_unanimity_tables():
    for s in (3, 4, 5):
        t = near_unanimity_table(s)
        ones = tuple([1] * s)
        for x in oracles.points(2, s):
            assert oracles.evaluate(t, 2, x) == (sum(x) >= s - 1)
        for i in range(s):
            chi = tuple(0 if j == i else 1 for j in range(s))
            assert oracles.evaluate(t, 2, chi) == oracles.evaluate(t, 2, ones)


def test_binf_matches_membership_test():
    M = binf(4)
    for n in (1, 2, 3, 4):
        got = {f.payload for f in M.elements(n)}
        ref = {bytes(t) for t in oracles.points(2, 2**n) if binf_member(bytes(t), n)}
        assert got == ref


def test_pol_k3_growth():
    # six colour permutations compose with each projection
    assert [pol_k3().size(n) for n in (1, 2, 3)] == [6, 12, 18]
    assert [pol_k3(oriented=True).size(n) for n in (1, 2, 3)] == [3, 6, 9]


@pytest.mark.parametrize("n", range(1, 7))
def test_partitions_are_counted_by_bell_numbers(n):
    ps = partitions(n)
    assert len(ps) == len(set(ps)) == oracles.bell(n)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cosieve_routes_agree(n):
    O = OmegaMinion()
    by_kernels = {O.from_kernels(n, ks) for ks in cosieve_kernel_sets(n)}
    by_filter = {tuple(sorted(c)) for c in cosieves_by_closure(n)}
    assert by_kernels == by_filter


def test_omega_sizes():
    assert [len(cosieve_kernel_sets(n)) for n in (1, 2, 3, 4)] == [2, 3, 10, 347]


def test_omega_membership_is_closed():
    O = OmegaMinion(cutoff=3)
    for K in O.elements(2):
        for b in all_maps(2, 2):
            if O.contains_map(K, b):
                for g in all_maps(2, 3):
                    assert O.contains_map(K, compose(b, g))
    top = O.true(3)
    assert all(O.contains_map(top, b) for b in all_maps(3, 2))
    g = O.generated_by([MinorOp.of([0, 0, 1], 2)], 3)
    assert O.contains_map(g, MinorOp.of([0, 0, 0], 1))
    assert not O.contains_map(g, MinorOp.of([0, 1, 2], 3))


def test_omega_tabulation_is_a_minion():
    M = omega(3)
    for n in (1, 2):
        for f in M.elements(n):
            for al in all_maps(n, 2):
                for be in all_maps(2, 3):
                    assert M.act(M.act(f, al), be) == M.act(f, compose(al, be))


def test_named_conditions_parse():
    conds = named_conditions(5)
    assert {"siggers", "symmetric-2", "symmetric-5", "qnu-3", "qnu-5"} <= set(conds)
    for text in conds.values():
        assert pp_parse(text).relations
