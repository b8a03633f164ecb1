import itertools

import pytest

from minionlab.base import ResourceError, limits
from minionlab.catalog import (
    binf,
    core_j2_characterization,
    empty,
    free,
    functions,
    idempotents,
    near_unanimity_minion,
    named_conditions,
    projections,
    symmetric_binary,
    terminal,
)
from minionlab.construct import ProductMinion, SumMinion
from minionlab.homsearch import (
    core,
    count_homs,
    decide,
    endomorphisms,
    extract_factor_hom,
    hom_bounded,
    order_compare,
    satisfies_pp,
    truncated_endomorphisms,
)
from minionlab.presented import pp_parse

import oracles


def brute_pp(M, text: str) -> bool:
    """Try every choice of generator images in a function minion."""
    P = pp_parse(text)
    pools = [[f.payload for f in M.elements(ar)] for _, ar in P.generators]
    index = {s: i for i, (s, _) in enumerate(P.generators)}
    for choice in itertools.product(*pools):
        if all(
            oracles.minor(choice[index[s]], M.a, al.values, al.codomain)
            == oracles.minor(choice[index[t]], M.a, be.values, be.codomain)
            for (s, al), (t, be) in P.relations
        ):
            return True
    return False


TARGETS = {
    "KM3": lambda: near_unanimity_minion([3]),
    "KM34": lambda: near_unanimity_minion([3, 4]),
    "BINF4": lambda: binf(4),
    "J2": lambda: idempotents(2),
    "O23": lambda: functions(2, 3),
}


@pytest.mark.parametrize("target", sorted(TARGETS))
@pytest.mark.parametrize("cond", sorted(named_conditions(4)))
def test_pp_conditions_against_brute_force(target, cond):
    M = TARGETS[target]()
    text = named_conditions(4)[cond]
    P = pp_parse(text)
    if any(M.cutoff is not None and ar > M.cutoff for _, ar in P.generators):
        pytest.skip("beyond the truncation")
    work = 1
    for _, ar in P.generators:
        try:
            work *= M.size(ar)
        except ResourceError:
            pytest.skip("arity beyond the element budget")
    if work > 50_000:
        pytest.skip("too many candidates for the brute-force route")
    v = satisfies_pp(M, text)
    assert v.exact
    assert (v.value == "yes") == brute_pp(M, text)
    if v.value == "yes":
        assert not v.witness.failures(3)


def test_trivial_verdicts():
    assert decide(empty(), projections()).value == "yes"
    assert decide(projections(), empty()).value == "no"
    assert decide(near_unanimity_minion([3]), terminal()).value == "yes"
    assert decide(terminal(), projections()).value == "no"
    assert decide(projections(), symmetric_binary()).value == "yes"
    assert decide(symmetric_binary(), projections()).value == "no"


CATALOG = {
    "P": projections,
    "CONST": terminal,
    "C2": symmetric_binary,
    "KM3": lambda: near_unanimity_minion([3]),
    "KM4": lambda: near_unanimity_minion([4]),
    "KM34": lambda: near_unanimity_minion([3, 4]),
    "J2": lambda: idempotents(2),
    "O22": lambda: functions(2, 2),
    "S": lambda: SumMinion(projections(), near_unanimity_minion([3])),
    "X": lambda: ProductMinion(near_unanimity_minion([3]), symmetric_binary()),
}


@pytest.mark.parametrize("src,tgt", [(a, b) for a in sorted(CATALOG) for b in sorted(CATALOG) if a != b])
def test_structural_and_direct_routes_agree(src, tgt):
    M, N = CATALOG[src](), CATALOG[tgt]()
    v = decide(M, N)
    with limits(element_budget=20_000):
        try:
            w = decide(M, N, structural=False)
        except ResourceError:
            pytest.skip("direct route out of budget")
    if v.symbol != "?" and w.symbol != "?":
        assert v.value == w.value
    for u in (v, w):
        if u.value == "yes" and u.witness is not None:
            assert not u.witness.failures(3)


def test_known_separations():
    assert decide(near_unanimity_minion([3]), near_unanimity_minion([4])).value == "no"
    assert decide(near_unanimity_minion([4]), near_unanimity_minion([3])).value == "no"
    assert decide(near_unanimity_minion([3, 4]), near_unanimity_minion([3])).value == "no"
    assert decide(near_unanimity_minion([3]), near_unanimity_minion([3, 4])).value == "yes"
    assert decide(functions(2, 2), idempotents(2)).value == "no"
    assert decide(idempotents(2), functions(2, 2)).value == "yes"


@pytest.mark.parametrize("name", ["P", "C2", "KM3", "J2"])
def test_free_sources_count_elements(name):
    N = CATALOG[name]()
    assert count_homs(free(2), N)[0] == N.size(2)
    assert count_homs(projections(), N)[0] == N.size(1)


def test_bounded_search_finds_inclusion():
    v = hom_bounded(near_unanimity_minion([3]), idempotents(2), 3)
    assert v.value == "yes" and not v.witness.failures(3)


def test_core_of_idempotents():
    res = core(idempotents(2))
    ref = core_j2_characterization()
    for n in (1, 2, 3):
        assert {f.payload for f in res.core.elements(n)} == {f.payload for f in ref.elements(n)}
    assert [res.core.size(n) for n in (1, 2)] == [1, 3]
    assert not res.retraction.failures(3)
    again = core(res.core)
    assert [again.core.size(n) for n in (1, 2, 3)] == [res.core.size(n) for n in (1, 2, 3)]


def test_core_of_a_sum_with_a_terminal():
    res = core(SumMinion(projections(), terminal()))
    assert [res.core.size(n) for n in (1, 2, 3)] == [1, 1, 1]


def test_endomorphism_monoid_has_identity():
    mon = endomorphisms(idempotents(2))
    i = mon.identity_index()
    assert all(mon.table[i][j] == j for j in range(len(mon)))


def test_order_report():
    names = ["P", "C2", "KM3", "CONST", "J2"]
    rep = order_compare([CATALOG[n]() for n in names])
    assert rep.names == ["P", "C2", "KM(3)", "CONST", "J(2)"]
    assert [len(c) for c in rep.classes] == [1] * 5
    pairs = {(names[rep.classes[lo][0]], names[rep.classes[hi][0]]) for lo, hi in rep.covers}
    assert pairs == {("P", "C2"), ("P", "KM3"), ("C2", "J2"), ("KM3", "J2"), ("J2", "CONST")}
    dot = rep.dot()
    assert dot.startswith("digraph order {") and dot.count("->") == 5


def test_equivalence_classes_merge():
    rep = order_compare([functions(2, 2), terminal(), projections()])
    assert sorted(len(c) for c in rep.classes) == [1, 2]
    assert [0, 1] in rep.classes


def test_factor_extraction():
    Pr = ProductMinion(near_unanimity_minion([3]), projections())
    h = Pr.projections()[1]
    g = extract_factor_hom(h)
    assert not g.failures(3)


def test_truncated_endomorphisms_that_do_not_extend():
    # on unaries any self-map commutes; C2 has no map back to P
    rep = truncated_endomorphisms(SumMinion(projections(), symmetric_binary()), 1)
    assert (rep.truncated, rep.restricted, len(rep.non_extending), rep.exact) == (4, 2, 2, True)
    assert all(row["in1:f(0 0|1)"] == "in0:pi0" for row in rep.non_extending)
    rep = truncated_endomorphisms(idempotents(2), 2)
    assert rep.truncated == rep.restricted == 4 and not rep.non_extending


def test_free_minion_maps_are_generator_choices():
    from minionlab.presented import free_minion

    F = free_minion([("f", 2), ("g", 1)])
    for name in ("P", "C2", "KM3"):
        N = CATALOG[name]()
        assert count_homs(F, N)[0] == N.size(2) * N.size(1)
