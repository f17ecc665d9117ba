"""Input generators: seeded random systems and fixed families."""

import logging
import random
import string

from branchmin.entities.lts import Lts
from branchmin.entities.report import GenConfig

logger = logging.getLogger(__name__)

TAU = "tau"


def _visible_labels(count: int) -> list[str]:
    # "i" is an internal label by default
    letters = [c for c in string.ascii_lowercase if c != "i"]
    if count > len(letters):
        return [f"a{k}" for k in range(count)]
    return letters[:count]


def gen_random(cfg: GenConfig) -> Lts:
    """
    Generates a reproducible random LTS.

    A random spanning tree rooted at the initial state 0 makes every state
    reachable; the remaining transitions connect random states, so tau
    cycles occur. `label_count` counts tau as one of the labels. Duplicates
    are dropped, so the result can have fewer than the drawn number of
    transitions.
    """
    rng = random.Random(cfg.seed)
    m_target = rng.randint(0, cfg.m_max)
    n = min(rng.randint(1, cfg.n_max), m_target + 1)
    visible = _visible_labels(cfg.label_count - 1)
    labels = [TAU] + visible

    def draw_label() -> int:
        if not visible or rng.random() < cfg.tau_fraction:
            return 0
        return rng.randrange(1, len(labels))

    triples = [(rng.randrange(v), draw_label(), v) for v in range(1, n)]
    for _ in range(m_target - len(triples)):
        triples.append((rng.randrange(n), draw_label(), rng.randrange(n)))

    lts = Lts.normalized(n, 0, triples, labels)
    logger.debug(
        "Generated random LTS (seed %d): %d/%d", cfg.seed, lts.n, lts.m
    )
    return lts


def gen_appendix_a(k: int) -> Lts:
    """
    The two-state family on which the refinement needs only linear work.

    State 1 is initial. It has a tau step and a_1 … a_k steps to state 0
    and an a_0 loop; state 0 has a_1 … a_k loops. The system has 2k+2
    transitions and two branching bisimilarity classes.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    labels = [TAU] + [f"a{i}" for i in range(k + 1)]
    s0, s1 = 0, 1
    triples = [(s1, 0, s0), (s1, 1, s1)]
    for i in range(1, k + 1):
        triples.append((s1, i + 1, s0))
        triples.append((s0, i + 1, s0))
    return Lts.normalized(2, s1, triples, labels)


def gen_tau_cycle(n: int) -> Lts:
    """A single tau cycle through n states."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    return Lts.normalized(
        n, 0, [(s, 0, (s + 1) % n) for s in range(n)], [TAU]
    )


def gen_splitting_example() -> Lts:
    """
    Nine-state system whose block {s0, …, s5} needs a primary split, a
    secondary split with a new bottom state and a split on new non-inert
    tau transitions.

    Classes: {s0}, {s1}, {s2, s4}, {s3, s5}, {s6}, {s7, s8}. State s0 is
    not reachable from the initial state s4, so minimise it with
    prune=False to see all six classes.
    """
    labels = [TAU, "a", "b", "c", "d"]
    tau, a, b, c, d = range(5)
    triples = [
        (3, a, 7),
        (1, a, 7),
        (5, a, 7),
        (0, c, 8),
        (1, b, 8),
        (7, b, 7),
        (8, b, 8),
        (5, d, 6),
        (2, d, 6),
        (0, d, 6),
        (4, tau, 5),
        (4, tau, 3),
        (2, tau, 3),
        (1, tau, 3),
        (3, tau, 5),
        (4, tau, 2),
        (2, tau, 1),
    ]
    return Lts.normalized(9, 4, triples, labels)
