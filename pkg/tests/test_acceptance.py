"""Acceptance criteria 1-13, one test each, with one summary line per criterion.

Two checks are known to fail and are tracked by strict xfail tests below:
the literal count for the 3-colouring polymorphisms and the saturation
equality on the pinned relation pair.
"""

import pytest

from minionlab import acceptance

RESULTS: dict[int, acceptance.CriterionResult] = {}


def result(number: int) -> acceptance.CriterionResult:
    if number not in RESULTS:
        RESULTS[number] = acceptance.run_criterion(number, seed=0)
    return RESULTS[number]


@pytest.mark.parametrize("number", sorted(acceptance.CRITERIA))
def test_criterion(number):
    res = result(number)
    print(res.line())
    assert res.error is None, res.error
    assert res.checks, "a criterion with no checks proves nothing"
    undocumented = res.failures(include_known=False)
    assert not undocumented, "; ".join(f"{c.label}: {c.detail}" for c in undocumented)


def _documented(number: int, issue: str) -> list[acceptance.Check]:
    checks = [c for c in result(number).checks if c.known_issue == issue]
    assert checks, f"criterion {number} no longer carries the {issue} check"
    return checks


@pytest.mark.xfail(strict=True, reason="the 3-colouring polymorphisms number 6n, not 3n")
def test_pol_k3_literal_count():
    assert all(c.ok for c in _documented(1, acceptance.POL_K3_COUNT))


@pytest.mark.xfail(strict=True, reason="the pinned pair's polymorphisms are not closed under composition")
def test_saturation_equality_on_pinned_pair():
    assert all(c.ok for c in _documented(11, acceptance.SATURATION_EQUALITY))


def test_seed_is_reproducible():
    a = acceptance.run_criterion(10, seed=3)
    b = acceptance.run_criterion(10, seed=3)
    assert [c.ok for c in a.checks] == [c.ok for c in b.checks]
    assert [c.label for c in a.checks] == [c.label for c in b.checks]
