# Copyright 2025 The branchmin Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""
Exhaustive consistency checks of a refinement engine.

Meant for small inputs: every check walks the complete data structures.
Each function returns a list of human-readable violations; an empty list
means the engine is consistent.
"""

import logging
from collections import deque

logger = logging.getLogger(__name__)


def _check_permutation(name: str, arr: list[int], pos: list[int]) -> list[str]:
    if sorted(arr) != list(range(len(arr))):
        return [f"{name} is not a permutation"]
    return [
        f"{name}: position of {x} is {pos[x]}, expected {i}"
        for i, x in enumerate(arr)
        if pos[x] != i
    ]


def _wrong_side(t: int, where: str) -> str:
    return f"transition {t} on the wrong side of the inert boundary ({where})"


def _bunch_of(engine, t: int) -> int:
    bunches = engine.bunches
    return bunches.abs_bunch[bunches.abs_of[t]]


def check_partition(engine) -> list[str]:
    p, tr = engine.partition, engine.transitions
    found = _check_permutation("state order", p.order, p.pos)
    covered = 0
    for block in sorted(
        range(p.block_count), key=lambda b: p.blk_begin[b]
    ):
        begin, bottom_end, end = (
            p.blk_begin[block],
            p.blk_bottom_end[block],
            p.blk_end[block],
        )
        if begin != covered or not begin <= bottom_end <= end or begin >= end:
            found.append(
                f"block {block} has bad bounds {begin}/{bottom_end}/{end}"
            )
        covered = end
        for i in range(begin, end):
            state = p.order[i]
            if p.block_of[state] != block:
                found.append(f"state {state} is in the slice of block {block}")
            has_inert = any(
                engine.is_inert(t) for t in tr.outgoing_inert(state)
            )
            if has_inert != (i >= bottom_end):
                kind = "non-bottom" if i >= bottom_end else "bottom"
                having = "has" if has_inert else "has no"
                found.append(
                    f"state {state} is {kind} but {having} inert transition"
                )
    if covered != len(p.order):
        found.append("blocks do not cover every state")
    return found


def check_transitions(engine) -> list[str]:
    tr = engine.transitions
    found = _check_permutation("outgoing order", tr.out_arr, tr.out_pos)
    found += _check_permutation("incoming order", tr.in_arr, tr.in_pos)
    for state in range(tr.n):
        for i in range(tr.out_begin[state], tr.out_begin[state + 1]):
            t = tr.out_arr[i]
            if tr.src[t] != state:
                found.append(f"transition {t} listed under source {state}")
            if engine.is_inert(t) != (i >= tr.out_inert_begin[state]):
                found.append(_wrong_side(t, "out"))
        for i in range(tr.in_begin[state], tr.in_begin[state + 1]):
            t = tr.in_arr[i]
            if tr.tgt[t] != state:
                found.append(f"transition {t} listed under target {state}")
            if engine.is_inert(t) != (i >= tr.in_inert_begin[state]):
                found.append(_wrong_side(t, "in"))
        seen_bunches = set()
        for i in range(tr.out_begin[state], tr.out_inert_begin[state]):
            t = tr.out_arr[i]
            group = tr.og_of[t]
            if not tr.og_begin[group] <= i < tr.og_end[group]:
                found.append(f"transition {t} outside its out-group")
                continue
            bunch = _bunch_of(engine, t)
            if tr.og_bunch[group] != bunch:
                found.append(f"out-group {group} mixes bunches")
            if i == tr.og_begin[group]:
                if bunch in seen_bunches:
                    found.append(
                        f"state {state} has two out-groups for bunch {bunch}"
                    )
                seen_bunches.add(bunch)
    return found


def check_bunches(engine) -> list[str]:
    bunches, tr = engine.bunches, engine.transitions
    block_of = engine.partition.block_of
    found = _check_permutation("bunch order", bunches.a_arr, bunches.a_pos)
    for i, t in enumerate(bunches.a_arr):
        if engine.is_inert(t) != (i >= bunches.a_inert_begin):
            found.append(_wrong_side(t, "bunches"))
    signature: dict[int, tuple[int, int]] = {}
    covered = 0
    live = sorted(
        (b for b in range(bunches.bunch_count) if bunches.size(b) > 0),
        key=lambda b: bunches.bunch_begin[b],
    )
    for bunch in live:
        if bunches.bunch_begin[bunch] != covered:
            found.append(
                f"bunch {bunch} does not start where the previous ends"
            )
        covered = bunches.bunch_end[bunch]
        for i in range(bunches.bunch_begin[bunch], bunches.bunch_end[bunch]):
            t = bunches.a_arr[i]
            action_slice = bunches.abs_of[t]
            begin = bunches.abs_begin[action_slice]
            if not begin <= i < bunches.abs_end[action_slice]:
                found.append(f"transition {t} outside its action-block-slice")
            if bunches.abs_bunch[action_slice] != bunch:
                found.append(
                    f"action-block-slice {action_slice} outside bunch {bunch}"
                )
            key = (tr.key[t], block_of[tr.tgt[t]])
            if signature.setdefault(action_slice, key) != key:
                found.append(
                    f"action-block-slice {action_slice} is not homogeneous"
                )
    if covered != bunches.a_inert_begin:
        found.append("bunches do not cover the non-inert transitions")
    owner: dict[tuple[int, int, int], int] = {}
    for action_slice, (key, block) in signature.items():
        bunch = bunches.abs_bunch[action_slice]
        if owner.setdefault((bunch, key, block), action_slice) != action_slice:
            found.append(
                f"bunch {bunch} splits action {key} into block {block} "
                "over slices"
            )
    return found


def check_slices(engine) -> list[str]:
    slices, tr, p = engine.slices, engine.transitions, engine.partition
    found = _check_permutation("slice order", slices.b_arr, slices.b_pos)
    for i, t in enumerate(slices.b_arr):
        if engine.is_inert(t) != (i >= slices.b_inert_begin):
            found.append(_wrong_side(t, "slices"))
    listed = set(engine.splitters)
    live = set()
    for i in range(slices.b_inert_begin):
        t = slices.b_arr[i]
        slice_id = slices.bbs_of[t]
        live.add(slice_id)
        if not slices.bbs_begin[slice_id] <= i < slices.bbs_end[slice_id]:
            found.append(f"transition {t} outside its block-bunch-slice")
        if p.block_of[tr.src[t]] != slices.bbs_block[slice_id]:
            found.append(
                f"slice {slice_id} has a transition from another block"
            )
        if _bunch_of(engine, t) != slices.bbs_bunch[slice_id]:
            found.append(
                f"slice {slice_id} has a transition from another bunch"
            )
    per_block_bunch: dict[tuple[int, int], int] = {}
    for slice_id in live:
        block = slices.bbs_block[slice_id]
        key = (block, slices.bbs_bunch[slice_id])
        if per_block_bunch.setdefault(key, slice_id) != slice_id:
            found.append(f"block {block} has two slices in bunch {key[1]}")
        if slice_id not in p.blk_slices[block]:
            found.append(f"block {block} does not list slice {slice_id}")
        if slices.bbs_stable[slice_id] == (slice_id in listed):
            found.append(
                f"slice {slice_id} stability flag disagrees with the "
                "splitter list"
            )
        if not (
            slices.bbs_begin[slice_id]
            <= slices.bbs_marked_end[slice_id]
            <= slices.bbs_end[slice_id]
        ):
            found.append(f"slice {slice_id} has a bad marked boundary")
    for block, listed_slices in enumerate(p.blk_slices):
        for slice_id in listed_slices - live:
            found.append(f"block {block} lists the empty slice {slice_id}")
    return found


def check_stability(engine) -> list[str]:
    """
    Every bottom state has a transition in every slice leaving its block,
    and equal (source block, action, target block) triples share a bunch.
    """
    slices, tr, p = engine.slices, engine.transitions, engine.partition
    found = []
    for block in range(p.block_count):
        for slice_id in p.blk_slices[block]:
            if slices.size(slice_id) == 0 or not slices.bbs_stable[slice_id]:
                continue
            sources = {tr.src[t] for t in slices.transitions(slice_id)}
            for state in p.bottom_states(block):
                if state not in sources:
                    found.append(
                        f"bottom state {state} has no transition in slice "
                        f"{slice_id}"
                    )
    bunch_of: dict[tuple[int, int, int], int] = {}
    for t in range(tr.m):
        if engine.is_inert(t):
            continue
        key = (p.block_of[tr.src[t]], tr.key[t], p.block_of[tr.tgt[t]])
        bunch = _bunch_of(engine, t)
        if bunch_of.setdefault(key, bunch) != bunch:
            found.append(f"transitions {key} lie in different bunches")
    return found


def check_inert_acyclic(engine) -> list[str]:
    tr = engine.transitions
    indegree = [0] * tr.n
    for t in range(tr.m):
        if engine.is_inert(t):
            indegree[tr.tgt[t]] += 1
    queue = deque(s for s in range(tr.n) if indegree[s] == 0)
    visited = 0
    while queue:
        state = queue.popleft()
        visited += 1
        for t in tr.outgoing_inert(state):
            if engine.is_inert(t):
                indegree[tr.tgt[t]] -= 1
                if indegree[tr.tgt[t]] == 0:
                    queue.append(tr.tgt[t])
    if visited != tr.n:
        return ["inert transitions form a cycle"]
    return []


def check_marked_bottom_states(engine, block: int, slice_id: int) -> list[str]:
    """
    The bottom states of `block` with a transition in the slice are exactly
    those with a marked transition in it.
    """
    slices, tr, p = engine.slices, engine.transitions, engine.partition
    if slices.bbs_block[slice_id] != block:
        return [f"slice {slice_id} does not leave block {block}"]
    bottom = set(p.bottom_states(block))
    having = {tr.src[t] for t in slices.transitions(slice_id)} & bottom
    marked = {tr.src[t] for t in slices.marked(slice_id)} & bottom
    return [
        f"bottom state {state} has no marked transition in slice {slice_id}"
        for state in sorted(having - marked)
    ]


def reference_reach(engine, block: int, slice_id: int) -> set[int]:
    """States of `block` that reach a transition of the slice by inert steps."""
    tr, block_of = engine.transitions, engine.partition.block_of
    predecessors: dict[int, list[int]] = {}
    for t in range(tr.m):
        if engine.is_inert(t) and block_of[tr.src[t]] == block:
            predecessors.setdefault(tr.tgt[t], []).append(tr.src[t])
    reach = {tr.src[t] for t in engine.slices.transitions(slice_id)}
    queue = deque(reach)
    while queue:
        for pred in predecessors.get(queue.popleft(), ()):
            if pred not in reach:
                reach.add(pred)
                queue.append(pred)
    return reach


def check_split_outcome(
    engine, block: int, slice_id: int, outcome
) -> list[str]:
    """
    Compares a split result, before its block is divided, with a fixed-point
    computation of the states that reach the slice.
    """
    p, tr = engine.partition, engine.transitions
    begin, bottom_end, end = (
        p.blk_begin[block],
        p.blk_bottom_end[block],
        p.blk_end[block],
    )
    u = set(p.order[begin : outcome.u_bottom_end])
    u.update(p.order[bottom_end : outcome.u_nonbottom_end])
    r = set(p.order[begin:end]) - u

    found = []
    expected = reference_reach(engine, block, slice_id)
    if r != expected:
        found.append(
            f"block {block}: R is {sorted(r)}, expected {sorted(expected)}"
        )
    if (len(u), len(r)) != (outcome.u_size, outcome.r_size):
        found.append(
            f"block {block}: sizes {outcome.u_size}/{outcome.r_size} "
            f"do not match {len(u)}/{len(r)}"
        )
    for t in range(tr.m):
        if engine.is_inert(t) and tr.src[t] in u and tr.tgt[t] in r:
            found.append(f"inert transition {t} runs from U into R")
    for state in outcome.new_bottom_candidates:
        if state not in r:
            found.append(f"new bottom candidate {state} is not in R")
        elif any(
            engine.is_inert(t) and tr.tgt[t] in r
            for t in tr.outgoing_inert(state)
        ):
            found.append(
                f"new bottom candidate {state} keeps an inert step in R"
            )

    if outcome.steps:
        if outcome.smaller_side == "U":
            winner, loser, smaller = outcome.u_steps, outcome.r_steps, len(u)
        else:
            winner, loser, smaller = outcome.r_steps, outcome.u_steps, len(r)
        if loser > winner + 1:
            found.append(
                f"block {block}: coroutines out of lockstep "
                f"(U {outcome.u_steps}, R {outcome.r_steps} steps)"
            )
        if 2 * smaller > end - begin:
            found.append(
                f"block {block}: {outcome.smaller_side} finished with "
                f"{smaller} of {end - begin} states"
            )
    return found

def validate_engine(engine) -> list[str]:
    """Runs every check; meant to be called between two iterations."""
    found = []
    for check in (
        check_partition,
        check_transitions,
        check_bunches,
        check_slices,
        check_inert_acyclic,
    ):
        found += check(engine)
    if not found:
        found += check_stability(engine)
    if found:
        logger.debug("Validation found %d problems", len(found))
    return found
