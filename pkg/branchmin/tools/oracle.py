"""
Naive signature refinement, used to cross-check the fast minimiser.

Shares no data structures with the engine: every round recomputes the inert
closure of every state from scratch.
"""

import logging

from branchmin.entities.lts import Lts
from branchmin.entities.partition import Partition

logger = logging.getLogger(__name__)

Signature = frozenset[tuple[int, int]]


def _signatures(
    lts: Lts, keys: list[int], tau: int, block_of: list[int]
) -> list[Signature]:
    successors: list[list[tuple[int, int]]] = [[] for _ in range(lts.n)]
    for src, label, tgt in lts.transitions:
        successors[src].append((keys[label], tgt))

    signatures = []
    for state in range(lts.n):
        block = block_of[state]
        observed = set()
        seen = {state}
        stack = [state]
        while stack:
            current = stack.pop()
            for key, tgt in successors[current]:
                if key == tau and block_of[tgt] == block:
                    if tgt not in seen:
                        seen.add(tgt)
                        stack.append(tgt)
                    continue
                observed.add((key, block_of[tgt]))
        signatures.append(frozenset(observed))
    return signatures


def _refine(
    lts: Lts, keys: list[int], tau: int, block_of: list[int]
) -> list[int]:
    signatures = _signatures(lts, keys, tau, block_of)
    ids: dict[tuple[int, Signature], int] = {}
    return [
        ids.setdefault((block_of[s], signatures[s]), len(ids))
        for s in range(lts.n)
    ]


def _tau_key(lts: Lts) -> int:
    tau = lts.actions.tau_index
    return -1 if tau is None else tau


def signature_round(lts: Lts, partition: Partition) -> Partition:
    """One refinement round: splits every block of `partition` by signature."""
    keys = lts.actions.action_keys()
    refined = _refine(lts, keys, _tau_key(lts), list(partition.block_of))
    return Partition.from_labels(refined)


def oracle_minimize(lts: Lts) -> Partition:
    """
    Branching bisimilarity by signature refinement.

    Starting from a single block, every state's signature is the set of
    (action, target block) pairs it can reach through tau steps inside its
    own block; tau steps staying inside the block are not observed. Blocks
    are split by signature until nothing changes. Cost grows roughly as
    m·n² so keep inputs small.

    Returns:
        Partition: blocks numbered by smallest member state.
    """
    keys = lts.actions.action_keys()
    tau = _tau_key(lts)

    block_of = [0] * lts.n
    count = 1
    rounds = 0
    while True:
        rounds += 1
        refined = _refine(lts, keys, tau, block_of)
        refined_count = max(refined) + 1
        if refined_count == count:
            break
        block_of, count = refined, refined_count
    logger.debug("Oracle stable after %d rounds with %d blocks", rounds, count)
    return Partition.from_labels(block_of)
