import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import REFERENCE_DEPTHS, REFERENCE_K, REFERENCE_LEVELS
from splittree.errors import InputError, LimitError
from splittree.signature import canonicalize, is_dominated, truncate
from splittree.solver import (
    LevelSet,
    SolverConfig,
    decide,
    generate_children_fast,
    generate_children_naive,
    prune_level,
    trace_levels,
)


def children_set(generator, k, sig):
    return {rec.child for rec in generator(k, canonicalize(sig))}


class TestGenerators:
    def test_reference_children(self):
        expected = REFERENCE_LEVELS[5]
        assert children_set(generate_children_naive, REFERENCE_K, REFERENCE_DEPTHS) == expected
        assert children_set(generate_children_fast, REFERENCE_K, REFERENCE_DEPTHS) == expected

    def test_unit_edge_single_candidate(self):
        # merge value of (2,2) is 1, then normalized to 0 as a singleton
        assert children_set(generate_children_naive, 2, [2, 2]) == {(0,)}
        for sig in ([1, 2, 3], [4, 4, 4, 4], [0, 5, 9]):
            assert len(children_set(generate_children_naive, 2, sig)) <= 1

    def test_three_bounds_golden(self):
        # all three pairs of [1,2,3] at k=3, dominated candidates removed
        assert children_set(generate_children_naive, 3, [1, 2, 3]) == {(0, 2), (1, 1)}

    def test_fast_equals_naive_small_exhaustive(self):
        for n in range(2, 5):
            for sig in itertools.combinations_with_replacement(range(9), n):
                for k in (2, 3, 4, 5, 6):
                    assert children_set(generate_children_fast, k, sig) == children_set(
                        generate_children_naive, k, sig
                    ), (k, sig)

    def test_fast_equals_naive_wide_exhaustive(self):
        # the documented equivalence grid: |a| <= 6, values in [0,10], k in 2..6
        for n in (5, 6):
            for sig in itertools.combinations_with_replacement(range(11), n):
                for k in (2, 3, 4, 5, 6):
                    assert children_set(generate_children_fast, k, sig) == children_set(
                        generate_children_naive, k, sig
                    ), (k, sig)

    def test_candidate_count_bound(self):
        rng = random.Random(99)
        for _ in range(300):
            k = rng.randint(2, 8)
            n = rng.randint(2, 20)
            sig = canonicalize([rng.randint(0, 3 * k) for _ in range(n)])
            assert len(generate_children_fast(k, sig)) <= k * (n - 1)

    def test_rejects_singleton(self):
        with pytest.raises(InputError):
            generate_children_naive(2, canonicalize([4]))

    def test_candidates_are_sorted_and_negative_free(self):
        recs = generate_children_naive(6, canonicalize([0, 1, 5, 9]))
        children = [r.child for r in recs]
        assert children == sorted(children)
        assert all(c[0] >= 0 for c in children)


class TestPruneLevel:
    def _level(self, sigs):
        return LevelSet(
            z=len(sigs[0]),
            signatures=frozenset(canonicalize(s) for s in sigs),
            record_of={},
        )

    def test_removes_dominated(self):
        level = self._level([[4, 5, 7, 8, 9], [4, 5, 8, 8, 9]])
        assert prune_level(level).signatures == {(4, 5, 8, 8, 9)}

    def test_singleton_untouched(self):
        level = self._level([[3, 7]])
        assert prune_level(level).signatures == {(3, 7)}

    def test_equal_multisets_collapse(self):
        level = self._level([[1, 2], [2, 1]])
        assert prune_level(level).signatures == {(1, 2)}

    def test_incomparable_all_kept(self):
        level = self._level([[0, 9], [3, 5], [4, 4]])
        assert len(prune_level(level).signatures) == 3


class TestDecide:
    def test_reference_instance(self):
        decision = decide(REFERENCE_K, REFERENCE_DEPTHS)
        assert decision.realizable
        assert len(decision.witness_chain) == 5

    @pytest.mark.parametrize(
        "k,depths,expected",
        [
            (2, [0], True),
            (2, [0, 0], False),
            (3, [1, 2, 3], False),
            (2, [2, 2, 2, 2], True),
            (6, [5, 7], True),
            (4, [2, 2, 2], False),
            (2, [1, 2, 2], True),
        ],
    )
    def test_small_verdicts(self, k, depths, expected):
        assert decide(k, depths).realizable is expected

    def test_input_validation(self):
        with pytest.raises(InputError):
            decide(2, [])
        with pytest.raises(InputError):
            decide(2, [3, -1])
        with pytest.raises(InputError):
            decide(0, [3])

    def test_witness_chain_links_up(self):
        decision = decide(REFERENCE_K, REFERENCE_DEPTHS)
        chain = decision.witness_chain
        top = truncate(canonicalize(REFERENCE_DEPTHS), (REFERENCE_K - 1) * 5)
        assert chain[0].parent == top
        for first, second in zip(chain, chain[1:]):
            assert first.child == second.parent
        assert len(chain[-1].child) == 1 and chain[-1].child[0] >= 0

    def test_spread_bound_on_records(self):
        for k, depths in [(6, REFERENCE_DEPTHS), (4, [3, 6, 6, 9, 9]), (5, [2, 8, 8, 8])]:
            for level in trace_levels(k, depths):
                for rec in level.record_of.values():
                    assert rec.child.max_value <= rec.l_value + k - 1

    def test_untouched_prefix_matches_input(self):
        # values below the smallest inserted merge value are original bounds
        for k, depths in [(6, REFERENCE_DEPTHS), (4, [1, 3, 6, 6, 9]), (3, [0, 2, 5, 7, 8])]:
            top = truncate(canonicalize(depths), (k - 1) * (len(depths) - 1))
            for level in trace_levels(k, depths):
                for sig, rec in level.record_of.items():
                    kept = [v for v in sig if v < rec.l_value]
                    assert list(sig[: len(kept)]) == list(top[: len(kept)])
                    assert len(kept) == sum(1 for v in top if v < rec.l_value)

    def test_pruning_does_not_change_verdict(self):
        no_prune = SolverConfig(prune_level_domination=False)
        for k in (2, 3, 5):
            for n in range(1, 5):
                for depths in itertools.combinations_with_replacement(range(0, 9, 2), n):
                    assert (
                        decide(k, depths).realizable
                        is decide(k, depths, no_prune).realizable
                    )

    def test_generator_choice_does_not_change_verdict(self):
        naive = SolverConfig(use_fast_generator=False)
        for k, depths in [(6, REFERENCE_DEPTHS), (3, [1, 2, 3]), (4, [2, 5, 7, 7])]:
            assert decide(k, depths).realizable is decide(k, depths, naive).realizable

    @given(
        depths=st.lists(st.integers(min_value=0, max_value=12), min_size=1, max_size=6),
        k=st.integers(min_value=2, max_value=6),
        seed=st.integers(min_value=0, max_value=2**16),
    )
    @settings(max_examples=150, deadline=None)
    def test_permutation_invariance(self, depths, k, seed):
        shuffled = list(depths)
        random.Random(seed).shuffle(shuffled)
        assert decide(k, depths).realizable is decide(k, shuffled).realizable

    def test_scaling_preserves_realizability(self):
        for k in (2, 3):
            for n in range(1, 5):
                for depths in itertools.combinations_with_replacement(range(7), n):
                    if decide(k, depths).realizable:
                        for c in (2, 3):
                            scaled = [c * v for v in depths]
                            assert decide(c * k, scaled).realizable, (k, depths, c)

    def test_looser_bounds_stay_realizable(self):
        rng = random.Random(5)
        for _ in range(200):
            k = rng.randint(2, 6)
            n = rng.randint(1, 5)
            depths = [rng.randint(0, 8) for _ in range(n)]
            if decide(k, depths).realizable:
                looser = [v + rng.randint(0, 3) for v in depths]
                assert decide(k, looser).realizable

    def test_single_leaf(self):
        decision = decide(5, [7])
        assert decision.realizable and decision.witness_chain == []

    def test_stats_counters_fill_in(self):
        stats = decide(REFERENCE_K, REFERENCE_DEPTHS).stats
        assert stats.signatures_generated > 0
        assert stats.peak_level_size == 6
        assert stats.wall_time_s >= 0


class TestTraceLevels:
    def test_reference_levels_exact(self):
        levels = trace_levels(REFERENCE_K, REFERENCE_DEPTHS)
        assert len(levels) == 6
        for level in levels:
            assert set(level.signatures) == REFERENCE_LEVELS[level.z]

    def test_two_unit_leaves(self):
        levels = trace_levels(2, [1, 1])
        assert [set(lv.signatures) for lv in levels] == [{(1, 1)}, {(0,)}]

    def test_three_equal_bounds_golden(self):
        # verified against the exhaustive tree-enumeration oracle
        levels = trace_levels(4, [2, 2, 2])
        assert [set(lv.signatures) for lv in levels] == [{(2, 2, 2)}, {(0, 2)}, set()]
        assert not decide(4, [2, 2, 2]).realizable

    def test_unit_edge_levels_stay_single(self):
        for depths in ([3, 3, 3, 3], [1, 3, 3, 4, 5, 6]):
            for level in trace_levels(2, depths):
                assert len(level.signatures) == 1

    def test_deterministic(self):
        a = trace_levels(REFERENCE_K, REFERENCE_DEPTHS)
        b = trace_levels(REFERENCE_K, REFERENCE_DEPTHS)
        assert [lv.sorted_signatures() for lv in a] == [lv.sorted_signatures() for lv in b]
        ra = [lv.record_of[s] for lv in a for s in lv.sorted_signatures() if s in lv.record_of]
        rb = [lv.record_of[s] for lv in b for s in lv.sorted_signatures() if s in lv.record_of]
        assert ra == rb


class TestLimits:
    def test_level_size_limit(self):
        with pytest.raises(LimitError):
            decide(6, [4, 5, 6, 7, 8, 9], SolverConfig(max_level_size=2))

    def test_time_limit(self):
        with pytest.raises(LimitError):
            decide(4, list(range(0, 60, 3)), SolverConfig(max_seconds=0.0))

    def test_limits_off_by_default(self):
        assert decide(6, [4, 5, 6, 7, 8, 9]).realizable in (True, False)
