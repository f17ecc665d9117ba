import math

import pytest
from hypothesis import HealthCheck, given, settings

from branchmin import equivalent, minimize
from branchmin.entities.lts import REMOVED
from branchmin.exceptions import LabelConflictError
from branchmin.shared_libraries.callbacks import EngineCallbacks
from branchmin.tools.aut import set_internal
from branchmin.tools.generators import gen_appendix_a, gen_tau_cycle
from branchmin.tools.oracle import oracle_minimize
from conftest import make_lts, small_lts

PROPERTY_SETTINGS = settings(
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)


@pytest.mark.unit
class TestMinimize:
    def test_single_deadlock(self):
        result = minimize(make_lts(1, []))
        assert result.quotient.n == 1
        assert result.quotient.m == 0

    def test_inert_tau_is_absorbed(self):
        result = minimize(make_lts(3, [(0, "tau", 1), (1, "a", 2)]))
        assert result.partition.blocks() == [[0, 1], [2]]
        assert result.quotient.m == 1
        assert result.quotient.actions.labels == ("a",)

    def test_tau_losing_an_option_is_kept(self):
        lts = make_lts(3, [(0, "tau", 1), (0, "b", 2), (1, "a", 2)])
        result = minimize(lts)
        assert result.partition.is_discrete()
        assert result.quotient.m == 3
        assert result.quotient.tau_count() == 1

    def test_tau_cycle(self):
        result = minimize(gen_tau_cycle(6))
        assert result.quotient.n == 1
        assert result.quotient.m == 0
        assert result.preprocess.scc_count_contracted == 1
        assert set(result.partition.block_of) == {0}

    @pytest.mark.parametrize("k", [1, 2, 3, 8])
    def test_appendix_a_family(self, k):
        result = minimize(gen_appendix_a(k))
        assert result.quotient.n == 2
        assert result.quotient.m == 2 * k + 2
        assert result.quotient.initial == 1
        assert result.counters.total > 0

    def test_splitting_example_without_pruning(self, splitting_example):
        result = minimize(splitting_example, prune=False)
        assert result.partition.blocks() == [
            [0],
            [1],
            [2, 4],
            [3, 5],
            [6],
            [7, 8],
        ]

    def test_unreachable_states_are_removed(self, splitting_example):
        result = minimize(splitting_example)
        assert result.partition.block_of[0] == REMOVED
        assert result.state_map[0] == REMOVED
        assert result.preprocess.removed_unreachable == 1
        assert result.quotient.n == 5
        assert (
            result.state_map[splitting_example.initial]
            == result.quotient.initial
        )

    def test_validation_passes(self, splitting_example):
        result = minimize(splitting_example, prune=False, validate=True)
        assert result.partition.block_count == 6

    def test_callbacks_are_called(self, mocker, splitting_example):
        leaving = []
        before_iteration = mocker.Mock()
        before_split = mocker.Mock(
            side_effect=lambda engine, block, slice_id: leaving.append(
                engine.slices.bbs_block[slice_id] == block
            )
        )
        callbacks = EngineCallbacks(
            before_iteration=before_iteration, before_split=before_split
        )
        minimize(splitting_example, prune=False, callbacks=callbacks)
        assert before_iteration.call_count >= 2
        assert before_split.call_count == len(leaving) >= 1
        assert all(leaving)

    @PROPERTY_SETTINGS
    @given(small_lts())
    def test_agrees_with_signature_refinement(self, lts):
        result = minimize(lts, prune=False, validate=True)
        assert result.partition.same_relation(oracle_minimize(lts))

    @PROPERTY_SETTINGS
    @given(small_lts())
    def test_quotient_is_minimal(self, lts):
        quotient = minimize(lts).quotient
        assert oracle_minimize(quotient).is_discrete()
        again = minimize(quotient).quotient
        assert (again.n, again.m) == (quotient.n, quotient.m)

    @PROPERTY_SETTINGS
    @given(small_lts(max_n=12, max_m=40))
    def test_work_within_bounds(self, lts):
        result = minimize(lts)
        n = result.preprocess.preprocessed_n
        m = result.preprocess.preprocessed_m
        counters = result.counters
        # a moved action-block-slice is at most half of its bunch
        assert counters.bunch_units <= m * (math.log2(max(m, 1)) + 2)
        # every state becomes bottom at most once
        assert counters.new_bottom_units <= n + m
        assert counters.smaller_block_units <= (n + 2 * m) * (
            math.log2(n) + 1
        )


@pytest.mark.unit
class TestEquivalent:
    def test_inert_prefix(self):
        verdict, partition = equivalent(
            make_lts(3, [(0, "tau", 1), (1, "a", 2)]),
            make_lts(2, [(0, "a", 1)]),
        )
        assert verdict
        assert len(partition.block_of) == 5

    def test_tau_after_visible_step(self):
        verdict, _ = equivalent(
            make_lts(4, [(0, "a", 1), (1, "tau", 2), (2, "b", 3)]),
            make_lts(3, [(0, "a", 1), (1, "b", 2)]),
        )
        assert verdict

    def test_tau_discarding_a_choice(self):
        verdict, _ = equivalent(
            make_lts(4, [(0, "tau", 1), (0, "b", 2), (1, "a", 3)]),
            make_lts(3, [(0, "a", 1), (0, "b", 2)]),
        )
        assert not verdict

    def test_missing_loop(self, appendix_a_3):
        edges = [(1, "tau", 0)]
        for i in (1, 2, 3):
            edges += [(1, f"a{i}", 0), (0, f"a{i}", 0)]
        verdict, _ = equivalent(appendix_a_3, make_lts(2, edges, initial=1))
        assert not verdict

    def test_visible_tau_is_not_absorbed(self):
        first = set_internal(make_lts(3, [(0, "tau", 1), (1, "a", 2)]), [])
        second = set_internal(make_lts(2, [(0, "a", 1)]), [])
        assert minimize(first).quotient.n == 3
        verdict, _ = equivalent(first, second)
        assert not verdict

    def test_conflicting_internal_labels(self):
        with pytest.raises(LabelConflictError):
            equivalent(
                make_lts(2, [(0, "a", 1)], internal=("a",)),
                make_lts(2, [(0, "a", 1)]),
            )

    @PROPERTY_SETTINGS
    @given(small_lts())
    def test_system_matches_its_quotient(self, lts):
        verdict, _ = equivalent(lts, minimize(lts).quotient)
        assert verdict
