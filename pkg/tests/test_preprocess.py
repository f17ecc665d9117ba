import pytest
from hypothesis import HealthCheck, given, settings

from branchmin.entities.lts import REMOVED
from branchmin.tools.generators import gen_tau_cycle
from branchmin.tools.preprocess import (
    contract_tau_sccs,
    initial_partition,
    preprocess,
    prune_unreachable,
)
from conftest import make_lts, small_lts

PROPERTY_SETTINGS = settings(
    max_examples=150,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)


def _has_tau_cycle(lts) -> bool:
    internal = lts.actions.internal
    successors = {s: [] for s in range(lts.n)}
    for src, label, tgt in lts.transitions:
        if label in internal:
            successors[src].append(tgt)
    white, gray, black = 0, 1, 2
    color = [white] * lts.n

    def _visit(state) -> bool:
        color[state] = gray
        for nxt in successors[state]:
            if color[nxt] == gray:
                return True
            if color[nxt] == white and _visit(nxt):
                return True
        color[state] = black
        return False

    return any(color[s] == white and _visit(s) for s in range(lts.n))


@pytest.mark.unit
class TestPrune:
    def test_unreachable_states_removed(self):
        lts = make_lts(4, [(2, "a", 0), (0, "b", 3)], initial=2)
        pruned, state_map = prune_unreachable(lts)
        assert pruned.n == 3
        assert pruned.initial == 0
        assert state_map.map == (1, REMOVED, 0, 2)
        assert pruned.actions.labels == ("a", "b")

    def test_everything_reachable(self):
        lts = make_lts(2, [(0, "a", 1)])
        pruned, state_map = prune_unreachable(lts)
        assert pruned == lts
        assert state_map.map == (0, 1)


@pytest.mark.unit
class TestContract:
    def test_cycle_collapses_to_one_state(self):
        contracted, state_map = contract_tau_sccs(gen_tau_cycle(5))
        assert contracted.n == 1
        assert contracted.m == 0
        assert set(state_map.map) == {0}

    def test_representatives_in_state_order(self):
        lts = make_lts(
            4, [(1, "tau", 3), (3, "tau", 1), (0, "a", 1), (3, "b", 2)]
        )
        contracted, state_map = contract_tau_sccs(lts)
        assert state_map.map == (0, 1, 2, 1)
        assert contracted.n == 3
        a, b = contracted.actions.index("a"), contracted.actions.index("b")
        assert contracted.transitions == ((0, a, 1), (1, b, 2))

    def test_report_counts(self):
        lts = make_lts(
            3, [(0, "tau", 0), (1, "tau", 2), (2, "tau", 1), (0, "a", 1)]
        )
        contracted, report = preprocess(lts)
        assert report.removed_unreachable == 0
        assert report.scc_count_contracted == 2
        assert report.tau_self_loops_dropped == 3
        assert report.preprocessed_n == contracted.n == 2
        assert report.preprocessed_m == contracted.m == 1

    def test_without_pruning(self):
        lts = make_lts(3, [(1, "a", 2)])
        contracted, report = preprocess(lts, prune=False)
        assert contracted.n == 3
        assert report.map.map == (0, 1, 2)

    @PROPERTY_SETTINGS
    @given(small_lts())
    def test_no_tau_cycle_survives(self, lts):
        contracted, report = preprocess(lts)
        assert not _has_tau_cycle(contracted)
        assert report.map[lts.initial] == contracted.initial
        assert len(report.map) == lts.n


@pytest.mark.unit
class TestInitialPartition:
    def test_visible_and_invisible_blocks(self):
        # 0 -tau-> 1 -a-> 2, and 0 -tau-> 3 (3 deadlocks)
        lts = make_lts(
            4, [(0, "tau", 1), (1, "a", 2), (0, "tau", 3), (2, "tau", 3)]
        )
        partition, bunches = initial_partition(lts)
        assert partition.block_count == 2
        assert partition.block_of[0] == partition.block_of[1] == 0
        assert partition.block_of[2] == partition.block_of[3] == 1
        # the a-step and the tau step from 0 into the invisible block
        assert bunches.a_inert_begin == 2
        assert bunches.bunch_count == 1
        assert not bunches.is_trivial(0)

    def test_only_deadlocks(self):
        partition, bunches = initial_partition(make_lts(3, [(0, "tau", 1)]))
        assert partition.block_count == 1
        assert bunches.bunch_count == 0
        assert partition.bottom_states(0) == [1, 2]

    def test_bottom_states_first(self):
        lts = make_lts(3, [(0, "tau", 1), (1, "a", 2), (2, "a", 2)])
        partition, _ = initial_partition(lts)
        assert partition.block_count == 1
        assert sorted(partition.bottom_states(0)) == [1, 2]
        assert not partition.is_bottom(0)
