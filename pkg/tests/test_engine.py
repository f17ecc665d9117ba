import pytest
from hypothesis import HealthCheck, given, settings

from branchmin import minimize
from branchmin.engine import (
    BlockBunchSliceTable,
    BunchTable,
    RefinementEngine,
    SplitterList,
    StatePartition,
)
from branchmin.shared_libraries.callbacks import EngineCallbacks
from branchmin.shared_libraries.validation import (
    check_split_outcome,
    validate_engine,
)
from branchmin.tools.generators import gen_splitting_example
from conftest import make_lts, small_lts

PROPERTY_SETTINGS = settings(
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)


def _consistent(partition: StatePartition) -> bool:
    return all(partition.pos[s] == i for i, s in enumerate(partition.order))


def _table(keys: list[int]) -> BunchTable:
    """All transitions 0 -> 0 in a one-state block, tau key 0."""
    m = len(keys)
    return BunchTable.initial([0] * m, keys, [0] * m, [0], 0)


@pytest.mark.unit
class TestStatePartition:
    def test_from_blocks(self):
        partition = StatePartition.from_blocks(5, [([0, 1], [2]), ([3], [4])])
        assert partition.block_count == 2
        assert partition.block_of == [0, 0, 0, 1, 1]
        assert partition.bottom_states(0) == [0, 1]
        assert partition.states(1) == [3, 4]
        assert not partition.is_bottom(2)
        assert partition.is_bottom(3)

    def test_exchange_short_left(self):
        partition = StatePartition(5)
        partition.exchange(0, 2, 5)
        assert set(partition.order[:3]) == {2, 3, 4}
        assert set(partition.order[3:]) == {0, 1}
        assert _consistent(partition)

    def test_exchange_short_right(self):
        partition = StatePartition(4)
        partition.exchange(0, 3, 4)
        assert partition.order[0] == 3
        assert set(partition.order[1:]) == {0, 1, 2}
        assert _consistent(partition)

    def test_make_bottom(self):
        partition = StatePartition.from_blocks(3, [([0], [1, 2])])
        partition.make_bottom(2)
        assert partition.blk_bottom_end[0] == 2
        assert partition.is_bottom(2)
        assert not partition.is_bottom(1)
        assert _consistent(partition)


@pytest.mark.unit
class TestBunchTable:
    def test_small_first_slice_split_off(self):
        table = _table([1, 1, 2, 2, 2, 2, 2, 3, 3])
        moved, small = table.split_off_small_abs(0)
        assert moved == 0
        assert table.size(small) == 2
        assert table.size(0) == 7
        assert table.is_trivial(small)

    def test_large_first_slice_keeps_it(self):
        table = _table([1, 1, 2, 2, 2, 2, 2, 3, 3])
        table.split_off_small_abs(0)
        moved, small = table.split_off_small_abs(0)
        assert moved == 2
        assert table.abs_transitions(moved) == [7, 8]
        assert table.size(0) == 5
        assert table.is_trivial(0)

    def test_trivial_bunches_leave_the_stack(self):
        table = _table([1, 2])
        assert table.stack == [0]
        table.split_off_small_abs(0)
        assert table.pop() is None
        table.push(0)
        assert table.stack == []

    def test_carve_abs(self):
        table = _table([1, 1, 1, 2])
        carved: dict[int, int] = {}
        table.carve_abs(1, carved)
        table.carve_abs(0, carved)
        new = carved[0]
        assert table.abs_transitions(0) == [2]
        assert sorted(table.abs_transitions(new)) == [0, 1]
        assert table.abs_bunch[new] == 0
        assert table.abs_of[0] == table.abs_of[1] == new

    def test_append_noninert(self):
        # t0 leaves the block, t1 is an inert self-loop
        table = BunchTable.initial([0, 0], [1, 0], [1, 0], [0, 0], 0)
        assert table.a_inert_begin == 1
        action_slice = table.new_action_slice(1, 0)
        table.append_noninert(1, 0, action_slice)
        assert table.a_inert_begin == 2
        assert table.size(0) == 2
        assert table.abs_transitions(action_slice) == [1]


@pytest.mark.unit
class TestBlockBunchSliceTable:
    @pytest.fixture
    def slices(self) -> BlockBunchSliceTable:
        bunches = _table([1, 1, 1, 2])
        table = BlockBunchSliceTable.initial([0] * 4, [0], bunches)
        table.bbs_stable[0] = False
        return table

    def test_one_stable_slice_per_block(self):
        bunches = _table([1, 2])
        table = BlockBunchSliceTable.initial([0, 0], [0], bunches)
        assert table.bbs_stable == [True]
        assert table.size(0) == 2
        with pytest.raises(AssertionError):
            table.mark(0)

    def test_mark_builds_a_prefix(self, slices):
        slices.mark(2)
        slices.mark(3)
        slices.mark(2)
        assert sorted(slices.marked(0)) == [2, 3]
        assert slices.is_marked(3) and not slices.is_marked(0)

    def test_carve_keeps_marks(self, slices):
        slices.mark(2)
        slices.mark(3)
        new = slices.carve(0, marked=[3], unmarked=[0], block=1)
        assert slices.marked(0) == [2]
        assert sorted(slices.transitions(0)) == [1, 2]
        assert slices.marked(new) == [3]
        assert sorted(slices.transitions(new)) == [0, 3]
        assert slices.bbs_block[new] == 1
        assert slices.bbs_of[0] == new
        assert not slices.bbs_stable[new]

    def test_make_stable_clears_marks(self, slices):
        slices.bbs_primary[0] = True
        slices.mark_all(0)
        slices.make_stable(0)
        assert slices.marked(0) == []
        assert slices.bbs_stable[0]
        assert not slices.bbs_primary[0]


@pytest.mark.unit
class TestSplitterList:
    def test_ordering_operations(self):
        splitters = SplitterList()
        splitters.append(1)
        splitters.append(2)
        splitters.prepend(0)
        splitters.insert_after(1, 5)
        assert list(splitters) == [0, 1, 5, 2]
        splitters.remove(0)
        assert splitters.first_two() == [1, 5]
        splitters.remove(2)
        assert splitters.tail == 5
        assert len(splitters) == 2
        assert 5 in splitters and 2 not in splitters

    def test_empty(self):
        splitters = SplitterList()
        assert not splitters
        assert splitters.first_two() == []
        splitters.append(3)
        assert splitters.first_two() == [3]
        splitters.remove(3)
        assert splitters.head is None and splitters.tail is None


@pytest.mark.unit
class TestRefinementEngine:
    def test_fresh_engine_is_consistent(self, splitting_example):
        engine = RefinementEngine.from_lts(splitting_example)
        assert validate_engine(engine) == []

    def test_bottom_states_all_reach_the_splitter(self):
        engine = RefinementEngine.from_lts(make_lts(2, [(0, "a", 1)]))
        engine.slices.bbs_stable[0] = False
        engine.slices.mark_all(0)
        outcome = engine.split(0, 0)
        assert outcome.u_empty
        assert outcome.r_size == 1

    def test_bunch_split_then_block_split(self):
        # 0 -a-> 2 and 1 -b-> 2: the a-slice separates 0 from 1
        engine = RefinementEngine.from_lts(
            make_lts(3, [(0, "a", 2), (1, "b", 2)])
        )
        small, rest = engine.split_bunch(0)
        assert engine.bunches.size(small) == 1
        assert engine.bunches.size(rest) == 1
        primary, secondary = engine.splitters.first_two()
        assert engine.slices.bbs_primary[primary]
        assert not engine.slices.bbs_primary[secondary]

        outcome = engine.split(0, primary)
        assert outcome.u_size == 1 and outcome.r_size == 1
        r_block, u_block, crossing = engine.split_block(0, outcome)
        assert engine.partition.block_of[0] == r_block
        assert engine.partition.block_of[1] == u_block
        assert crossing == []
        assert engine.counters.bunch_units == 1
        assert engine.counters.smaller_block_units > 0
        assert validate_engine(engine) == []

    def test_tau_into_the_other_part_turns_noninert(self):
        # 2 reaches 0 and 1 by tau; the a-slice puts 1 alone in U
        engine = RefinementEngine.from_lts(
            make_lts(
                4, [(0, "a", 3), (1, "b", 3), (2, "tau", 0), (2, "tau", 1)]
            )
        )
        engine.split_bunch(0)
        primary = engine.splitters.head
        outcome = engine.split(0, primary)
        assert (outcome.smaller_side, outcome.u_size, outcome.r_size) == (
            "U",
            1,
            2,
        )
        assert (outcome.u_steps, outcome.r_steps) == (2, 1)
        # two inert successors, one of them found in U
        assert engine.untested[2] == 1

        r_block, u_block, crossing = engine.split_block(0, outcome)
        assert engine.partition.block_of[1] == u_block
        assert crossing == [3]

        bunch, tau_slice, new_bottom = engine.make_noninert_bunch(
            crossing, r_block
        )
        assert new_bottom == []
        assert engine.bunches.transitions(bunch) == [3]
        assert engine.slices.marked(tau_slice) == [3]
        assert engine.splitters.head == tau_slice
        assert not engine.is_inert(3)

    def test_extension_keeps_one_slice(self):
        engine = RefinementEngine.from_lts(
            make_lts(
                5,
                [
                    (0, "a", 4),
                    (1, "b", 4),
                    (2, "tau", 0),
                    (2, "tau", 1),
                    (3, "tau", 0),
                    (3, "tau", 1),
                ],
            )
        )
        engine.split_bunch(0)
        primary = engine.splitters.head
        outcome = engine.split(0, primary)
        r_block, _, crossing = engine.split_block(0, outcome)
        assert sorted(crossing) == [3, 5]

        first, second = sorted(crossing)
        bunch, tau_slice, _ = engine.make_noninert_bunch([first], r_block)
        extended, same_slice, _ = engine.make_noninert_bunch(
            [second], r_block, extend=tau_slice
        )
        bunches, slices = engine.bunches, engine.slices
        assert (extended, same_slice) == (bunch, tau_slice)
        assert sorted(slices.transitions(tau_slice)) == [3, 5]
        assert slices.bbs_bunch.count(bunch) == 1
        assert bunches.size(bunch) == 2
        assert not bunches.is_trivial(bunch)
        assert bunches.in_stack[bunch]

    def test_new_bottom_state_marks_one_transition_per_slice(self):
        # 2 has two a-steps and loses its only inert step to U = {1}
        engine = RefinementEngine.from_lts(
            make_lts(
                5,
                [
                    (0, "a", 3),
                    (1, "b", 3),
                    (1, "c", 3),
                    (1, "d", 3),
                    (2, "a", 3),
                    (2, "a", 4),
                    (2, "tau", 1),
                ],
            )
        )
        engine.split_bunch(0)
        primary = engine.splitters.head
        outcome = engine.split(0, primary)
        r_block, _, crossing = engine.split_block(0, outcome)
        assert crossing == [6]
        engine.splitters.remove(primary)
        engine.slices.make_stable(primary)

        bunch, tau_slice, new_bottom = engine.make_noninert_bunch(
            crossing, r_block
        )
        assert new_bottom == [2]
        assert 2 in engine.partition.bottom_states(r_block)

        engine.register_new_bottom(r_block, new_bottom, {bunch})
        slices = engine.slices
        assert not slices.bbs_stable[primary]
        assert not slices.bbs_primary[primary]
        assert primary in engine.splitters
        marked = slices.marked(primary)
        assert len(marked) == 1 and marked[0] in (4, 5)
        assert slices.marked(tau_slice) == [6]
        assert engine.counters.new_bottom_units == 4

    def test_new_bottom_without_transitions_marks_nothing(self):
        engine = RefinementEngine.from_lts(make_lts(3, [(0, "a", 1)]))
        before = list(engine.splitters)
        engine.register_new_bottom(1, [], set())
        assert engine.counters.new_bottom_units == 0
        engine.register_new_bottom(1, [1], set())
        assert list(engine.splitters) == before
        slices = engine.slices
        assert all(
            slices.marked(slice_id) == []
            for slice_id in range(len(slices.bbs_block))
        )
        assert engine.counters.new_bottom_units == 1


def _checked_splits(lts):
    """Minimises `lts` and checks every split against the reference."""
    problems, outcomes = [], []

    def after_split(engine, block, slice_id, outcome):
        problems.extend(check_split_outcome(engine, block, slice_id, outcome))
        outcomes.append(outcome)

    callbacks = EngineCallbacks(after_split=after_split)
    minimize(lts, prune=False, callbacks=callbacks)
    return problems, outcomes


@pytest.mark.unit
class TestSplit:
    def test_splitting_example(self):
        problems, outcomes = _checked_splits(gen_splitting_example())
        assert problems == []
        assert any(not outcome.u_empty for outcome in outcomes)
        assert any(outcome.steps > 0 for outcome in outcomes)

    @PROPERTY_SETTINGS
    @given(small_lts(max_n=10, max_m=30))
    def test_every_split_matches_the_reference(self, lts):
        problems, outcomes = _checked_splits(lts)
        assert problems == []
        for outcome in outcomes:
            if outcome.smaller_side == "U":
                winner, loser = outcome.u_steps, outcome.r_steps
            else:
                winner, loser = outcome.r_steps, outcome.u_steps
            assert loser <= winner + 1
