import pytest
from hypothesis import given
from hypothesis import strategies as st

from minionlab.analysis import (
    alpha_from_gamma,
    bump_witness,
    certify,
    combine_witnesses,
    constants_per_arity,
    essential_arity,
    essential_coords,
    evaluation_witness,
    gamma_from_alpha,
    growth,
    induced_hom,
    is_n_representable,
    pad_codomain,
    restrict_hom,
    tensor_arity,
)
from minionlab.catalog import free, functions, idempotents, near_unanimity_minion, omega, projections, symmetric_binary, terminal

import oracles


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=8))
def test_binomial_transforms_are_inverse(seq):
    assert alpha_from_gamma(gamma_from_alpha(seq)) == seq
    assert gamma_from_alpha(alpha_from_gamma(seq)) == seq


@st.composite
def tables(draw):
    a, b, n = draw(st.integers(2, 3)), draw(st.integers(2, 3)), draw(st.integers(1, 3))
    return a, b, n, bytes(draw(st.lists(st.integers(0, b - 1), min_size=a**n, max_size=a**n)))


@given(tables())
def test_essential_coords_match_dependence(case):
    a, b, n, t = case
    O = functions(a, b)
    assert essential_coords(O, O.fn(t, n)) == oracles.essential(t, a, n)


def test_growth_of_full_binary_functions():
    prof = growth(functions(2, 2), 3)
    assert prof.alpha == [2, 4, 16, 256]
    counts = [0] * 4
    for n in (1, 2, 3):
        for t in oracles.points(2, 2**n):
            if len(oracles.essential(t, 2, n)) == n:
                counts[n] += 1
    assert prof.gamma[1:] == counts[1:] == [2, 10, 218]


@pytest.mark.parametrize(
    "M,alpha,gamma",
    [
        (projections(), [0, 1, 2, 3, 4], [0, 1, 0, 0, 0]),
        (terminal(), [1, 1, 1, 1, 1], [1, 0, 0, 0, 0]),
        (symmetric_binary(), [0, 1, 3, 6, 10], [0, 1, 1, 0, 0]),
        (near_unanimity_minion([3]), [0, 1, 2, 4, 8], [0, 1, 0, 1, 0]),
    ],
)
def test_frozen_growth(M, alpha, gamma):
    prof = growth(M, 4)
    assert prof.alpha == alpha and prof.gamma == gamma


def test_constants():
    assert constants_per_arity(functions(2, 2), 3) == [2, 2, 2]
    assert constants_per_arity(idempotents(2), 3) == [0, 0, 0]
    assert constants_per_arity(terminal(), 3) == [1, 1, 1]


def test_essential_arity():
    assert essential_arity(near_unanimity_minion([3, 5])) == 5
    assert essential_arity(free(3)) == 3
    assert essential_arity(symmetric_binary()) == 2


@pytest.mark.parametrize("M", [projections(), symmetric_binary(), near_unanimity_minion([3])], ids=["P", "C2", "KM3"])
def test_tensor_classes_are_elements(M):
    for n in (1, 2, 3):
        count, normal = tensor_arity(M, n)
        assert count == M.size(n)
        assert sorted(normal.values(), key=repr) == sorted((f.payload for f in M.elements(n)), key=repr)


def test_representability():
    ok, w = is_n_representable(near_unanimity_minion([3]), 2)
    assert ok and certify(near_unanimity_minion([3]), w)
    ok, _ = is_n_representable(omega(3), 2, max_arity=3)
    assert not ok


@pytest.mark.parametrize("a,b", [(2, 2), (2, 3), (1, 3)])
def test_evaluation_witness_certifies(a, b):
    O = functions(a, b)
    w = evaluation_witness(O)
    assert certify(O, w, max_arity=3)
    h = induced_hom(O, w.phi, w.n, w.k)
    assert restrict_hom(h, a) == w.phi


def test_bumped_and_combined_witnesses():
    O = functions(2, 2)
    w = evaluation_witness(O)
    assert certify(O, pad_codomain(bump_witness(O, w), 3), max_arity=3)
    K = near_unanimity_minion([3])
    _, v = is_n_representable(K, 2)
    for mode in ("sum", "product"):
        M, u = combine_witnesses([(O, w), (K, v)], mode)
        assert certify(M, u, max_arity=3)
    with pytest.raises(ValueError):
        pad_codomain(w, 1)
    with pytest.raises(ValueError):
        combine_witnesses([(O, w), (O, bump_witness(O, w))], "sum")


def test_certify_rejects_collisions():
    O = functions(2, 2)
    w = evaluation_witness(O)
    w.phi = {p: 0 for p in w.phi}
    assert not certify(O, w, max_arity=2)
