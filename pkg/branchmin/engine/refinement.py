"""
The mutable refinement state and its structural operations.

`RefinementEngine` owns the state partition, the transition index, the
bunches with their action-block-slices, the block-bunch-slices and the
splitter list. The main loop in `branchmin.minimizer` drives it.
"""

import logging
from typing import Iterable, Optional

from branchmin.engine.bunches import (
    BlockBunchSliceTable,
    BunchTable,
    SplitterList,
)
from branchmin.engine.partition import StatePartition
from branchmin.engine.splitter import split
from branchmin.engine.transitions import TransitionIndex
from branchmin.entities.lts import Lts
from branchmin.entities.partition import SplitOutcome, WorkCounters

logger = logging.getLogger(__name__)


class RefinementEngine:
    """
    All data structures of one minimisation run.

    The LTS handed in must be pruned and free of tau cycles (see
    `branchmin.tools.preprocess.preprocess`).
    """

    def __init__(
        self,
        lts: Lts,
        partition: StatePartition,
        bunches: BunchTable,
    ):
        self.lts = lts
        keys = lts.actions.action_keys()
        tau = lts.actions.tau_index
        self.tau = -1 if tau is None else tau
        src = [s for s, _, _ in lts.transitions]
        key = [keys[label] for _, label, _ in lts.transitions]
        tgt = [t for _, _, t in lts.transitions]

        self.partition = partition
        self.bunches = bunches
        self.transitions = TransitionIndex(
            lts.n, src, key, tgt, partition.block_of, self.tau
        )
        self.slices = BlockBunchSliceTable.initial(
            src, partition.block_of, bunches
        )
        for slice_id, block in enumerate(self.slices.bbs_block):
            partition.blk_slices[block].add(slice_id)
        self.splitters = SplitterList()
        self.counters = WorkCounters()
        self.untested = [0] * lts.n

    @classmethod
    def from_lts(cls, lts: Lts) -> "RefinementEngine":
        # preprocess builds on the engine tables
        from branchmin.tools.preprocess import initial_partition

        partition, bunches = initial_partition(lts)
        return cls(lts, partition, bunches)

    def is_inert(self, t: int) -> bool:
        tr = self.transitions
        block_of = self.partition.block_of
        return (
            tr.key[t] == self.tau
            and block_of[tr.src[t]] == block_of[tr.tgt[t]]
        )

    def split(self, block: int, slice_id: int) -> SplitOutcome:
        return split(self, block, slice_id)

    # bunches

    def split_bunch(self, bunch: int) -> tuple[int, int]:
        """
        Moves a small action-block-slice of a nontrivial bunch into a new
        bunch and puts the affected block-bunch-slices on the splitter list.

        Every block with transitions in both parts gets its slice in the
        new bunch as primary splitter (all transitions marked), followed by
        its slice in the rest as secondary splitter in which one transition
        is marked per source that also has a transition in the new bunch.

        Returns:
            (new small bunch, remaining bunch)
        """
        bunches, slices, tr = self.bunches, self.slices, self.transitions
        moved_abs, small = bunches.split_off_small_abs(bunch)
        moved = bunches.abs_transitions(moved_abs)
        self.counters.bunch_units += len(moved)

        slice_map: dict[int, int] = {}
        group_map: dict[int, int] = {}
        for t in moved:
            slices.move_to_tail(t, slice_map, small)
            tr.move_to_group(t, group_map, small)

        for old, new in slice_map.items():
            block = slices.bbs_block[new]
            self.partition.blk_slices[block].add(new)
            if slices.size(old) == 0:
                self.partition.blk_slices[block].discard(old)
                continue
            for slice_id, primary in ((new, True), (old, False)):
                slices.bbs_stable[slice_id] = False
                slices.bbs_primary[slice_id] = primary
                self.splitters.append(slice_id)
            slices.mark_all(new)

        for old_group in group_map:
            if tr.group_nonempty(old_group):
                t = tr.out_arr[tr.og_begin[old_group]]
                if not slices.bbs_stable[slices.bbs_of[t]]:
                    slices.mark(t)

        bunches.push(bunch)
        logger.debug(
            "Split %d transitions off bunch %d into bunch %d, %d splitters",
            len(moved),
            bunch,
            small,
            len(self.splitters),
        )
        return small, bunch

    # blocks

    def split_block(
        self, block: int, outcome: SplitOutcome
    ) -> tuple[int, int, list[int]]:
        """
        Turns the zone layout left by `split` into two blocks.

        The smaller part gets a fresh block id and its transitions are moved
        to new action-block-slices and block-bunch-slices. Tau transitions
        from R into U stop being inert; they are returned but stay in the
        inert parts of the orderings until `make_noninert_bunch` moves them.

        Returns:
            (R block, U block, tau transitions from R to U)
        """
        p, tr = self.partition, self.transitions
        begin, bottom_end, end = (
            p.blk_begin[block],
            p.blk_bottom_end[block],
            p.blk_end[block],
        )
        p.exchange(outcome.u_bottom_end, bottom_end, outcome.u_nonbottom_end)
        u_bottom = outcome.u_bottom_end - begin
        r_bottom = bottom_end - outcome.u_bottom_end
        middle = begin + outcome.u_size

        u_moves = 2 * outcome.u_size <= p.size(block)
        if u_moves:
            new = p.add_block(begin, begin + u_bottom, middle)
            p.blk_begin[block] = middle
            p.blk_bottom_end[block] = middle + r_bottom
            r_block, u_block = block, new
        else:
            new = p.add_block(middle, middle + r_bottom, end)
            p.blk_bottom_end[block] = begin + u_bottom
            p.blk_end[block] = middle
            r_block, u_block = new, block
        moving = p.states(new)
        for state in moving:
            p.block_of[state] = new

        self._carve_slices(moving, block, new)
        self._carve_action_slices(moving)

        crossing = []
        if u_moves:
            for state in moving:
                for t in tr.incoming_inert(state):
                    if p.block_of[tr.src[t]] == r_block:
                        crossing.append(t)
        else:
            for state in moving:
                for t in tr.outgoing_inert(state):
                    if p.block_of[tr.tgt[t]] == u_block:
                        crossing.append(t)

        self.counters.smaller_block_units += sum(
            1 + tr.degree(state) for state in moving
        )
        logger.debug(
            "Block %d split into R=%d (%d states) and U=%d (%d states)",
            block,
            r_block,
            p.size(r_block),
            u_block,
            p.size(u_block),
        )
        return r_block, u_block, crossing

    def _carve_slices(self, moving: list[int], old_block: int, new_block: int):
        slices, tr = self.slices, self.transitions
        per_slice: dict[int, tuple[list[int], list[int]]] = {}
        for state in moving:
            for t in tr.outgoing_noninert(state):
                marked, unmarked = per_slice.setdefault(
                    slices.bbs_of[t], ([], [])
                )
                (marked if slices.is_marked(t) else unmarked).append(t)
        old_set = self.partition.blk_slices[old_block]
        new_set = self.partition.blk_slices[new_block]
        for old, (marked, unmarked) in per_slice.items():
            if len(marked) + len(unmarked) == slices.size(old):
                slices.bbs_block[old] = new_block
                old_set.discard(old)
                new_set.add(old)
                continue
            carved = slices.carve(old, marked, unmarked, new_block)
            new_set.add(carved)
            if not slices.bbs_stable[old]:
                self.splitters.insert_after(old, carved)

    def _carve_action_slices(self, moving: list[int]):
        bunches, tr = self.bunches, self.transitions
        carved: dict[int, int] = {}
        touched = set()
        for state in moving:
            for t in tr.incoming_noninert(state):
                bunches.carve_abs(t, carved)
                touched.add(bunches.abs_bunch[bunches.abs_of[t]])
        for bunch in touched:
            bunches.push(bunch)

    # tau transitions that became non-inert

    def make_noninert_bunch(
        self,
        crossing: list[int],
        owner: int,
        extend: Optional[int] = None,
    ) -> tuple[int, int, list[int]]:
        """
        Moves newly non-inert tau transitions, all leaving block `owner`,
        into a bunch of their own.

        With `extend` set to a block-bunch-slice created by an earlier call,
        the transitions are appended to that slice in a second
        action-block-slice, and the bunch is scheduled for splitting;
        otherwise a new bunch with one slice is created, fully marked and
        put at the front of the splitter list.

        Returns:
            (bunch, block-bunch-slice, states that became bottom)
        """
        bunches, slices, tr, p = (
            self.bunches,
            self.slices,
            self.transitions,
            self.partition,
        )
        if extend is None:
            bunch = bunches.new_bunch(bunches.a_inert_begin)
            slice_id = slices.new_slice(
                slices.b_inert_begin, bunch, owner, stable=False
            )
            p.blk_slices[owner].add(slice_id)
        else:
            slice_id = extend
            bunch = slices.bbs_bunch[slice_id]
        action_slice = bunches.new_action_slice(bunches.a_inert_begin, bunch)

        new_bottom = []
        for t in crossing:
            bunches.append_noninert(t, bunch, action_slice)
            slices.append_noninert(t, slice_id)
            tr.make_noninert(t, bunch)
            source = tr.src[t]
            if tr.inert_out_count(source) == 0 and not p.is_bottom(source):
                p.make_bottom(source)
                new_bottom.append(source)

        if extend is None:
            slices.bbs_primary[slice_id] = False
            slices.mark_all(slice_id)
            self.splitters.prepend(slice_id)
        else:
            bunches.push(bunch)
        logger.debug(
            "%d tau transitions leaving block %d now non-inert (bunch %d), "
            "%d new bottom states",
            len(crossing),
            owner,
            bunch,
            len(new_bottom),
        )
        return bunch, slice_id, new_bottom

    def register_new_bottom(
        self, block: int, states: Iterable[int], skip_bunches: set[int]
    ) -> None:
        """
        Makes the slices leaving `block` unstable after some of its states
        became bottom, and marks one transition per new bottom state in
        every unstable slice where it has one.
        """
        states = list(states)
        if not states:
            return
        slices, tr = self.slices, self.transitions
        for slice_id in sorted(self.partition.blk_slices[block]):
            if (
                slices.bbs_stable[slice_id]
                and slices.bbs_bunch[slice_id] not in skip_bunches
            ):
                slices.bbs_stable[slice_id] = False
                slices.bbs_primary[slice_id] = False
                self.splitters.append(slice_id)
        for state in states:
            for t in tr.group_starts(state):
                if not slices.bbs_stable[slices.bbs_of[t]]:
                    slices.mark(t)
            self.counters.new_bottom_units += 1 + len(
                tr.outgoing_noninert(state)
            )
