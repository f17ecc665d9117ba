"""Seeded random sweeps: agreement with signature refinement and work growth."""

import math
import random

import pytest

from branchmin import equivalent, minimize
from branchmin.entities.lts import Lts
from branchmin.entities.report import GenConfig
from branchmin.tools.generators import gen_random
from branchmin.tools.oracle import oracle_minimize

SWEEP_SEEDS = range(1000)
WITNESS_SIZES = [10_000, 20_000, 40_000, 80_000]


@pytest.mark.slow
def test_oracle_agreement_sweep():
    mismatches = []
    for seed in SWEEP_SEEDS:
        lts = gen_random(GenConfig(seed=seed))
        result = minimize(lts, prune=False)
        if not result.partition.same_relation(oracle_minimize(lts)):
            mismatches.append(seed)
            continue
        quotient = minimize(lts).quotient
        assert equivalent(lts, quotient)[0], seed
        again = minimize(quotient).quotient
        assert (again.n, again.m) == (quotient.n, quotient.m), seed
        assert oracle_minimize(quotient).is_discrete(), seed
    assert mismatches == []


def _fixed_density(m: int, seed: int) -> Lts:
    """
    Random system with m drawn transitions over m/4 states. Tau steps only
    go to higher states, so contraction leaves the size unchanged.
    """
    rng = random.Random(seed)
    n = m // 4
    labels = ["tau", "a", "b", "c"]
    triples = []
    for _ in range(m):
        src = rng.randrange(n)
        if rng.random() < 0.3 and src < n - 1:
            triples.append((src, 0, rng.randrange(src + 1, n)))
        else:
            triples.append((src, rng.randrange(1, 4), rng.randrange(n)))
    return Lts.normalized(n, 0, triples, labels)


@pytest.mark.slow
def test_work_grows_like_m_log_n():
    normalised = []
    for m in WITNESS_SIZES:
        lts = _fixed_density(m, seed=m)
        result = minimize(lts, prune=False)
        work = result.counters.total
        normalised.append(work / (lts.m * (math.floor(math.log2(lts.n)) + 1)))
    assert max(normalised) <= 3 * min(normalised), normalised
