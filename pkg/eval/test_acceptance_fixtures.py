"""Fixed inputs with known reduced sizes."""

import time

import pytest

from branchmin import equivalent, minimize
from branchmin.tools.generators import (
    gen_appendix_a,
    gen_splitting_example,
    gen_tau_cycle,
)
from branchmin.tools.oracle import oracle_minimize

APPENDIX_KS = [1, 2, 4, 8, 16, 32, 64, 128, 256]

TAU_CYCLE_SECONDS = 0.1


def test_splitting_example_blocks():
    lts = gen_splitting_example()
    result = minimize(lts, prune=False, validate=True)
    blocks = result.partition.blocks()
    for block in ([0], [1], [2, 4], [3, 5]):
        assert block in blocks
    assert result.partition.same_relation(oracle_minimize(lts))
    verdict, _ = equivalent(lts, minimize(lts).quotient)
    assert verdict


def test_appendix_a_family():
    ratios = []
    for k in APPENDIX_KS:
        lts = gen_appendix_a(k)
        result = minimize(lts)
        assert (result.quotient.n, result.quotient.m) == (2, 2 * k + 2)
        ratios.append(result.counters.total / lts.m)
        assert equivalent(lts, result.quotient)[0], k
    assert max(ratios) <= 2 * min(ratios), ratios


def test_tau_cycle_contraction():
    lts = gen_tau_cycle(10_000)
    started = time.perf_counter()
    result = minimize(lts)
    elapsed = time.perf_counter() - started
    assert (result.quotient.n, result.quotient.m) == (1, 0)
    assert elapsed < TAU_CYCLE_SECONDS
    assert equivalent(gen_tau_cycle(50), result.quotient)[0]


@pytest.mark.parametrize("k", [1, 4, 32])
def test_quotient_is_a_fixpoint(k):
    quotient = minimize(gen_appendix_a(k)).quotient
    again = minimize(quotient).quotient
    assert (again.n, again.m) == (quotient.n, quotient.m)
    assert oracle_minimize(quotient).is_discrete()
