"""
Preparation of an LTS for refinement.

Pruning keeps the states reachable from the initial state, contraction
replaces each strongly connected tau component by one loop-free state, and
the initial partition separates states that can inertly reach a visible
action from those that cannot.
"""

import logging
from collections import deque

from branchmin.engine.bunches import BunchTable
from branchmin.engine.partition import StatePartition
from branchmin.entities.lts import REMOVED, Lts, StateMap
from branchmin.entities.partition import PreprocessReport

logger = logging.getLogger(__name__)


def prune_unreachable(lts: Lts) -> tuple[Lts, StateMap]:
    """
    Keeps the states reachable from the initial state.

    States are renumbered in breadth-first order, so the initial state
    becomes 0. Removed states map to REMOVED.
    """
    successors: list[list[int]] = [[] for _ in range(lts.n)]
    for src, _, tgt in lts.transitions:
        successors[src].append(tgt)

    new_id = [REMOVED] * lts.n
    new_id[lts.initial] = 0
    count = 1
    queue = deque([lts.initial])
    while queue:
        state = queue.popleft()
        for tgt in successors[state]:
            if new_id[tgt] == REMOVED:
                new_id[tgt] = count
                count += 1
                queue.append(tgt)

    pruned = Lts.normalized(
        count,
        0,
        (
            (new_id[src], label, new_id[tgt])
            for src, label, tgt in lts.transitions
            if new_id[src] != REMOVED
        ),
        lts.actions.labels,
        lts.actions.internal_names(),
    )
    logger.debug("Pruned %d unreachable states", lts.n - count)
    return pruned, StateMap(map=tuple(new_id), target_n=count)


def _tau_components(n: int, tau_successors: list[list[int]]) -> list[int]:
    """
    Labels every state with its strongly connected component in the tau
    graph. Iterative Tarjan with an explicit call stack.
    """
    index = [-1] * n
    lowlink = [0] * n
    on_stack = [False] * n
    component = [-1] * n
    stack: list[int] = []
    counter = 0
    components = 0

    for root in range(n):
        if index[root] != -1:
            continue
        # frames of (state, next successor position)
        call_stack = [(root, 0)]
        index[root] = lowlink[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while call_stack:
            state, i = call_stack[-1]
            succ = tau_successors[state]
            if i < len(succ):
                call_stack[-1] = (state, i + 1)
                nxt = succ[i]
                if index[nxt] == -1:
                    index[nxt] = lowlink[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack[nxt] = True
                    call_stack.append((nxt, 0))
                elif on_stack[nxt]:
                    lowlink[state] = min(lowlink[state], index[nxt])
                continue
            call_stack.pop()
            if call_stack:
                parent = call_stack[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[state])
            if lowlink[state] == index[state]:
                while True:
                    member = stack.pop()
                    on_stack[member] = False
                    component[member] = components
                    if member == state:
                        break
                components += 1
    return component


def _contract(lts: Lts) -> tuple[Lts, StateMap, int, int]:
    """
    Returns:
        The contracted Lts, the state map, the number of nontrivial
        components (more than one state, or one state with a tau loop) and
        the number of tau transitions dropped as self-loops.
    """
    internal = lts.actions.internal
    tau_successors: list[list[int]] = [[] for _ in range(lts.n)]
    for src, label, tgt in lts.transitions:
        if label in internal:
            tau_successors[src].append(tgt)

    component = _tau_components(lts.n, tau_successors)

    representative: dict[int, int] = {}
    sizes: dict[int, int] = {}
    for state, comp in enumerate(component):
        representative.setdefault(comp, state)
        sizes[comp] = sizes.get(comp, 0) + 1
    # representatives are first seen in increasing state order
    dense = {comp: i for i, comp in enumerate(representative)}
    new_id = [dense[comp] for comp in component]

    looped: set[int] = set()
    dropped = 0
    kept = []
    for src, label, tgt in lts.transitions:
        a, b = new_id[src], new_id[tgt]
        if label in internal and a == b:
            dropped += 1
            looped.add(a)
            continue
        kept.append((a, label, b))
    nontrivial = sum(
        1
        for comp, size in sizes.items()
        if size > 1 or dense[comp] in looped
    )

    contracted = Lts.normalized(
        len(dense),
        new_id[lts.initial],
        kept,
        lts.actions.labels,
        lts.actions.internal_names(),
    )
    logger.debug(
        "Contracted %d tau components, dropped %d tau self-loops",
        nontrivial,
        dropped,
    )
    return (
        contracted,
        StateMap(map=tuple(new_id), target_n=len(dense)),
        nontrivial,
        dropped,
    )


def contract_tau_sccs(lts: Lts) -> tuple[Lts, StateMap]:
    """
    Replaces every strongly connected component of the tau graph by a
    single state without a tau self-loop.

    The representative of a component is its lowest state index, and the
    contracted states are numbered in the order of their representatives.
    Transitions merged into duplicates are removed, so the result has no
    tau cycle.
    """
    contracted, state_map, _, _ = _contract(lts)
    return contracted, state_map


def preprocess(lts: Lts, prune: bool = True) -> tuple[Lts, PreprocessReport]:
    """Runs pruning (optional) and tau-SCC contraction."""
    if prune:
        pruned, prune_map = prune_unreachable(lts)
    else:
        pruned, prune_map = lts, StateMap.identity(lts.n)
    contracted, scc_map, nontrivial, dropped = _contract(pruned)
    report = PreprocessReport(
        removed_unreachable=lts.n - pruned.n,
        scc_count_contracted=nontrivial,
        tau_self_loops_dropped=dropped,
        preprocessed_n=contracted.n,
        preprocessed_m=contracted.m,
        map=prune_map.compose(scc_map),
    )
    logger.info(
        "Preprocessed %d/%d into %d/%d (states/transitions)",
        lts.n,
        lts.m,
        contracted.n,
        contracted.m,
    )
    return contracted, report


def initial_partition(lts: Lts) -> tuple[StatePartition, BunchTable]:
    """
    Builds the initial state partition and the single initial bunch.

    The LTS must be pruned and free of tau cycles. States that can reach a
    visible transition through tau steps form one block, the others a
    second block (omitted when empty). The bunch holds every non-inert
    transition grouped by action and target block.
    """
    keys = lts.actions.action_keys()
    tau = lts.actions.tau_index
    n = lts.n

    tau_predecessors: list[list[int]] = [[] for _ in range(n)]
    visible = [False] * n
    queue = deque()
    for src, label, tgt in lts.transitions:
        if keys[label] == tau:
            tau_predecessors[tgt].append(src)
        elif not visible[src]:
            visible[src] = True
            queue.append(src)
    while queue:
        state = queue.popleft()
        for pred in tau_predecessors[state]:
            if not visible[pred]:
                visible[pred] = True
                queue.append(pred)

    has_vis = any(visible)
    block_count = 2 if has_vis and not all(visible) else 1
    block_of = [0 if block_count == 1 or visible[s] else 1 for s in range(n)]

    has_inert = [False] * n
    for src, label, tgt in lts.transitions:
        if keys[label] == tau and block_of[src] == block_of[tgt]:
            has_inert[src] = True

    groups = []
    for block in range(block_count):
        members = [s for s in range(n) if block_of[s] == block]
        groups.append(
            (
                [s for s in members if not has_inert[s]],
                [s for s in members if has_inert[s]],
            )
        )
    partition = StatePartition.from_blocks(n, groups)
    bunches = BunchTable.initial(
        [src for src, _, _ in lts.transitions],
        [keys[label] for _, label, _ in lts.transitions],
        [tgt for _, _, tgt in lts.transitions],
        partition.block_of,
        -1 if tau is None else tau,
    )
    logger.debug(
        "Initial partition: %d blocks, %d non-inert transitions",
        partition.block_count,
        bunches.a_inert_begin,
    )
    return partition, bunches
