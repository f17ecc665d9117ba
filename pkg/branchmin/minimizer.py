"""
The refinement main loop, quotient construction and equivalence checking.
"""

import logging
from typing import Optional

from .config import Config
from .engine.refinement import RefinementEngine
from .entities.lts import REMOVED, Lts, StateMap
from .entities.partition import MinimizationResult, Partition, SplitOutcome
from .exceptions import LabelConflictError
from .shared_libraries.callbacks import (
    EngineCallbacks,
    validating_callbacks,
)
from .tools.preprocess import preprocess, prune_unreachable

configs = Config()
logger = logging.getLogger(__name__)


def _before_split(
    callbacks: Optional[EngineCallbacks],
    engine: RefinementEngine,
    block: int,
    slice_id: int,
) -> None:
    if callbacks is not None and callbacks.before_split is not None:
        callbacks.before_split(engine, block, slice_id)


def _after_split(
    callbacks: Optional[EngineCallbacks],
    engine: RefinementEngine,
    block: int,
    slice_id: int,
    outcome: SplitOutcome,
) -> None:
    if callbacks is not None and callbacks.after_split is not None:
        callbacks.after_split(engine, block, slice_id, outcome)


def stabilize(
    engine: RefinementEngine,
    partner_bunch: Optional[int] = None,
    callbacks: Optional[EngineCallbacks] = None,
) -> None:
    """
    Processes the splitter list in order until it is empty.

    Each splitter splits its block into the part that can inertly reach it
    (R) and the rest (U). After a primary splitter, U's slice in
    `partner_bunch` is stable and is dropped from the list unexamined. Tau
    transitions from R to U form a new bunch under which R is split once
    more; the part that reaches them (N) may contain new bottom states, and
    then every slice leaving N has to be checked again.

    Args:
        engine (RefinementEngine): The engine whose splitter list to empty.
        partner_bunch (int): The remaining part of the bunch that was just
            split; the secondary partner of every primary splitter.
        callbacks (EngineCallbacks): Optional debug hooks.
    """
    splitters, slices = engine.splitters, engine.slices
    while splitters:
        splitter = splitters.head
        block = slices.bbs_block[splitter]
        primary = slices.bbs_primary[splitter]
        splitter_bunch = slices.bbs_bunch[splitter]

        _before_split(callbacks, engine, block, splitter)
        outcome = engine.split(block, splitter)
        _after_split(callbacks, engine, block, splitter, outcome)
        splitters.remove(splitter)
        slices.make_stable(splitter)
        if outcome.u_empty:
            continue

        r_block, u_block, crossing = engine.split_block(block, outcome)

        if primary and partner_bunch is not None:
            for candidate in splitters.first_two():
                if (
                    slices.bbs_block[candidate] == u_block
                    and slices.bbs_bunch[candidate] == partner_bunch
                ):
                    splitters.remove(candidate)
                    slices.make_stable(candidate)
                    break

        if not crossing:
            continue

        tau_bunch, tau_slice, new_bottom = engine.make_noninert_bunch(
            crossing, r_block
        )
        _before_split(callbacks, engine, r_block, tau_slice)
        outcome = engine.split(r_block, tau_slice)
        _after_split(callbacks, engine, r_block, tau_slice, outcome)
        splitters.remove(tau_slice)
        slices.make_stable(tau_slice)

        n_block = r_block
        later_bottom: list[int] = []
        if not outcome.u_empty:
            n_block, _, crossing = engine.split_block(r_block, outcome)
            if crossing:
                _, _, later_bottom = engine.make_noninert_bunch(
                    crossing, n_block, extend=tau_slice
                )

        skip = {tau_bunch}
        if not later_bottom:
            skip.add(splitter_bunch)
        engine.register_new_bottom(n_block, new_bottom + later_bottom, skip)


def _quotient(
    engine: RefinementEngine, original: Lts, state_map: StateMap
) -> tuple[Partition, Lts]:
    """
    Pulls the engine's blocks back to the original states and builds the
    quotient LTS over them.
    """
    block_of = engine.partition.block_of
    partition = Partition.from_labels(
        [REMOVED if pre == REMOVED else block_of[pre] for pre in state_map.map]
    )
    quotient_id = [0] * engine.partition.block_count
    for state, pre in enumerate(state_map.map):
        if pre != REMOVED:
            quotient_id[block_of[pre]] = partition.block_of[state]

    lts = engine.lts
    keys = lts.actions.action_keys()
    triples = {
        (quotient_id[block_of[src]], keys[label], quotient_id[block_of[tgt]])
        for t, (src, label, tgt) in enumerate(lts.transitions)
        if not engine.is_inert(t)
    }
    quotient = Lts.normalized(
        partition.block_count,
        partition.block_of[original.initial],
        triples,
        lts.actions.labels,
        lts.actions.internal_names(),
    )
    return partition, quotient


def minimize(
    lts: Lts,
    *,
    prune: bool = True,
    validate: Optional[bool] = None,
    callbacks: Optional[EngineCallbacks] = None,
) -> MinimizationResult:
    """
    Computes branching bisimilarity on `lts` and its quotient.

    Args:
        lts (Lts): The input transition system.
        prune (bool): Drop states unreachable from the initial state first.
        validate (bool): Check the engine's invariants at every loop
            boundary. Defaults to the `engine.validate_engine` setting.
        callbacks (EngineCallbacks): Hooks called inside the loop; they
            replace the validating hooks when given.

    Returns:
        MinimizationResult: the partition over the original states (pruned
        states are REMOVED), the quotient whose states are the blocks
        numbered by smallest member, the state map into the quotient, the
        work counters and the preprocessing report.

    Raises:
        InvariantViolation: if validation is on and finds an inconsistency.
    """
    if validate is None:
        validate = configs.engine.validate_engine
    if callbacks is None and validate:
        callbacks = validating_callbacks()

    prepared, report = preprocess(lts, prune=prune)
    engine = RefinementEngine.from_lts(prepared)
    bunches = engine.bunches

    iterations = 0
    while True:
        if callbacks is not None and callbacks.before_iteration is not None:
            callbacks.before_iteration(engine)
        bunch = bunches.pop()
        if bunch is None:
            break
        iterations += 1
        _, rest = engine.split_bunch(bunch)
        stabilize(engine, partner_bunch=rest, callbacks=callbacks)

    partition, quotient = _quotient(engine, lts, report.map)
    state_map = StateMap(map=partition.block_of, target_n=partition.block_count)
    logger.info(
        "Minimised %d/%d to %d/%d (states/transitions) in %d iterations, "
        "%d work units",
        lts.n,
        lts.m,
        quotient.n,
        quotient.m,
        iterations,
        engine.counters.total,
    )
    return MinimizationResult(
        partition=partition,
        quotient=quotient,
        state_map=state_map,
        counters=engine.counters,
        preprocess=report,
    )


def _unify_actions(l1: Lts, l2: Lts) -> tuple[list[str], set[str]]:
    """
    Merges two action tables by label name.

    Raises:
        LabelConflictError: if one table treats a label as internal and the
        other as visible.
    """
    internal1 = l1.actions.internal_names()
    internal2 = l2.actions.internal_names()
    for name in set(l1.actions.labels) & set(l2.actions.labels):
        if (name in internal1) != (name in internal2):
            raise LabelConflictError(
                f"label {name!r} is internal in one system and visible "
                "in the other"
            )
    labels = sorted(set(l1.actions.labels) | set(l2.actions.labels))
    return labels, set(internal1) | set(internal2)


def equivalent(l1: Lts, l2: Lts) -> tuple[bool, Partition]:
    """
    Decides whether the initial states of two systems are branching
    bisimilar by minimising their disjoint union.

    Returns:
        (verdict, partition over the union: states of l1 first, then the
        states of l2 shifted by l1's state count; both restricted to their
        reachable parts)
    """
    p1, _ = prune_unreachable(l1)
    p2, _ = prune_unreachable(l2)
    labels, internal = _unify_actions(p1, p2)
    index = {name: i for i, name in enumerate(labels)}

    offset = p1.n
    triples = [
        (src, index[p1.actions.labels[label]], tgt)
        for src, label, tgt in p1.transitions
    ]
    triples.extend(
        (src + offset, index[p2.actions.labels[label]], tgt + offset)
        for src, label, tgt in p2.transitions
    )
    union = Lts.normalized(
        p1.n + p2.n,
        0,
        triples,
        labels,
        internal,
    )
    result = minimize(union, prune=False)
    verdict = (
        result.partition.block_of[0] == result.partition.block_of[offset]
    )
    logger.info("Equivalence check: %s", verdict)
    return verdict, result.partition
