"""
Splitting a block under a splitter slice.

`split` separates the states of a block that can inertly reach a
transition of the slice (R) from those that cannot (U). Two coroutines
run in lockstep: one grows U upwards from the bottom states without a
marked transition, the other grows R backwards from the slice's sources.
Whichever finishes first determines the result, so the work done is
proportional to the smaller side.

During the split the block's part of the state order is laid out as

    U-bottom | R-bottom | U-non-bottom | untested | undefined | R-non-bottom
    begin    z1         bottom_end     z2         z3          z4         end

where untested states have at least one inert successor already known to
be in U and undefined states have not been visited.
"""

import logging
from typing import TYPE_CHECKING, Iterator, Optional

from branchmin.entities.partition import SplitOutcome

if TYPE_CHECKING:
    from branchmin.engine.refinement import RefinementEngine

logger = logging.getLogger(__name__)

RUNNING, FINISHED, ABORTED = "running", "finished", "aborted"


class _Split:
    """Zone bookkeeping plus the two coroutines for one split call."""

    def __init__(self, engine: "RefinementEngine", block: int, slice_id: int):
        self.partition = engine.partition
        self.transitions = engine.transitions
        self.slices = engine.slices
        self.untested = engine.untested
        self.slice_id = slice_id

        p = self.partition
        self.begin = p.blk_begin[block]
        self.bottom_end = p.blk_bottom_end[block]
        self.end = p.blk_end[block]
        self.size = self.end - self.begin
        self.z1 = self.bottom_end
        self.z2 = self.z3 = self.bottom_end
        self.z4 = self.end

        self.phase1_done = False
        self.candidates: list[int] = []
        self.u_steps = 0
        self.r_steps = 0

    # zone queries

    def in_r(self, state: int) -> bool:
        i = self.partition.pos[state]
        if i < self.bottom_end:
            return i >= self.z1
        return i >= self.z4

    def in_u(self, state: int) -> bool:
        i = self.partition.pos[state]
        if i < self.bottom_end:
            return i < self.z1
        return i < self.z2

    def is_untested(self, state: int) -> bool:
        return self.z2 <= self.partition.pos[state] < self.z3

    def is_undefined(self, state: int) -> bool:
        return self.z3 <= self.partition.pos[state] < self.z4

    @property
    def u_size(self) -> int:
        return self.z1 - self.begin + self.z2 - self.bottom_end

    @property
    def r_size(self) -> int:
        return self.bottom_end - self.z1 + self.end - self.z4

    # zone moves, each O(1)

    def _undefined_to_r(self, state: int) -> None:
        self.partition.swap(self.partition.pos[state], self.z4 - 1)
        self.z4 -= 1

    def _untested_to_r(self, state: int) -> None:
        p = self.partition
        p.swap(p.pos[state], self.z3 - 1)
        p.swap(self.z3 - 1, self.z4 - 1)
        self.z3 -= 1
        self.z4 -= 1

    def _untested_to_u(self, state: int) -> None:
        self.partition.swap(self.partition.pos[state], self.z2)
        self.z2 += 1

    def _undefined_to_untested(self, state: int) -> None:
        self.partition.swap(self.partition.pos[state], self.z3)
        self.z3 += 1

    def add_to_r(self, state: int) -> None:
        if self.is_untested(state):
            self._untested_to_r(state)
        elif self.is_undefined(state):
            self._undefined_to_r(state)

    # initialisation: R := sources of marked transitions, U := other bottoms

    def seed(self) -> None:
        p, slices = self.partition, self.slices
        for t in slices.marked(self.slice_id):
            state = self.transitions.src[t]
            i = p.pos[state]
            if i < self.bottom_end:
                if i < self.z1:
                    p.swap(i, self.z1 - 1)
                    self.z1 -= 1
            elif self.is_undefined(state):
                self._undefined_to_r(state)

    # coroutines; every yield is one step

    def u_coroutine(self) -> Iterator[str]:
        tr = self.transitions
        half = self.size
        i = self.begin
        while True:
            if 2 * self.u_size > half:
                yield ABORTED
                return
            if i == self.z1:
                i = self.bottom_end
            if i >= self.z2 and i >= self.bottom_end:
                yield FINISHED
                return
            u = self.partition.order[i]
            i += 1
            for t in tr.incoming_inert(u):
                pred = tr.src[t]
                if self.in_r(pred) or self.in_u(pred):
                    yield RUNNING
                    continue
                if self.is_undefined(pred):
                    self.untested[pred] = tr.inert_out_count(pred)
                    self._undefined_to_untested(pred)
                self.untested[pred] -= 1
                if self.untested[pred] > 0:
                    yield RUNNING
                    continue
                if self.phase1_done:
                    self._untested_to_u(pred)
                else:
                    yield RUNNING
                    yield from self._slow_test(pred)
                if 2 * self.u_size > half:
                    yield ABORTED
                    return
                if self.phase1_done:
                    yield RUNNING

    def _slow_test(self, state: int) -> Iterator[str]:
        """Looks for a splitter transition among the state's own transitions."""
        tr = self.transitions
        for t in tr.outgoing_noninert(state):
            if self.in_r(state):
                return
            if self.phase1_done:
                break
            if self.slices.bbs_of[t] == self.slice_id:
                self._untested_to_r(state)
                self.candidates.append(state)
                yield RUNNING
                return
            yield RUNNING
        if not self.in_r(state):
            self._untested_to_u(state)

    def r_coroutine(self) -> Iterator[str]:
        tr, slices = self.transitions, self.slices
        half = self.size
        if 2 * self.r_size > half:
            yield ABORTED
            return
        for t in slices.b_arr[
            slices.bbs_marked_end[self.slice_id] : slices.bbs_end[self.slice_id]
        ]:
            self.add_to_r(tr.src[t])
            if 2 * self.r_size > half:
                yield ABORTED
                return
            yield RUNNING
        self.phase1_done = True

        order = self.partition.order
        for i in range(self.z1, self.bottom_end):
            for t in tr.incoming_inert(order[i]):
                self.add_to_r(tr.src[t])
                if 2 * self.r_size > half:
                    yield ABORTED
                    return
                yield RUNNING
        i = self.end - 1
        while i >= self.z4:
            for t in tr.incoming_inert(order[i]):
                self.add_to_r(tr.src[t])
                if 2 * self.r_size > half:
                    yield ABORTED
                    return
                yield RUNNING
            i -= 1
        yield FINISHED

    def run(self) -> Optional[str]:
        """Alternates the coroutines, U first, until one of them finishes."""
        u_gen, r_gen = self.u_coroutine(), self.r_coroutine()
        u_live = r_live = True
        while u_live or r_live:
            if u_live:
                self.u_steps += 1
                status = next(u_gen)
                if status == FINISHED:
                    return "U"
                if status == ABORTED:
                    u_live = False
            if r_live:
                self.r_steps += 1
                status = next(r_gen)
                if status == FINISHED:
                    return "R"
                if status == ABORTED:
                    r_live = False
        return None


def split(
    engine: "RefinementEngine", block: int, slice_id: int
) -> SplitOutcome:
    """
    Splits `block` into the states that can inertly reach a transition of
    the block-bunch-slice `slice_id` (R) and the others (U).

    The marked transitions of the slice must identify every bottom state
    that has a transition in it. On return the block's states are ordered
    U-bottom, R-bottom, U-non-bottom, R-non-bottom; nothing else changes.

    Args:
        engine (RefinementEngine): The engine holding the partition.
        block (int): The block to split.
        slice_id (int): A block-bunch-slice leaving `block`.

    Returns:
        SplitOutcome: zone boundaries and sizes of both sides.
    """
    work = _Split(engine, block, slice_id)
    work.seed()
    if work.z1 == work.begin:
        logger.debug("Block %d: every bottom state reaches the splitter", block)
        return SplitOutcome(
            block=block,
            u_bottom_end=work.begin,
            u_nonbottom_end=work.bottom_end,
            r_size=work.size,
            u_size=0,
            smaller_side="U",
        )

    winner = work.run()
    if winner == "U":
        u_nonbottom_end = work.z2
    else:
        u_nonbottom_end = work.z4
    u_size = work.z1 - work.begin + u_nonbottom_end - work.bottom_end
    logger.debug(
        "Block %d split: |R|=%d |U|=%d in %d steps (%s finished first)",
        block,
        work.size - u_size,
        u_size,
        work.u_steps + work.r_steps,
        winner,
    )
    return SplitOutcome(
        block=block,
        u_bottom_end=work.z1,
        u_nonbottom_end=u_nonbottom_end,
        r_size=work.size - u_size,
        u_size=u_size,
        smaller_side=winner,
        new_bottom_candidates=[s for s in work.candidates if work.in_r(s)],
        u_steps=work.u_steps,
        r_steps=work.r_steps,
    )
