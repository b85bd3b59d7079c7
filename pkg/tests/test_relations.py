import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slicemon import (
    Trace,
    drop_count,
    independent,
    is_k_maz,
    is_k_slice,
    parse_trace,
    permutation_of,
    read,
    rf_equivalent,
    sequential_interleaved_pair,
    slice_height,
    swap_distance,
    trace_equivalent,
    write,
)
from slicemon.oracle import enumerate_rf_reorderings, swap_ball, swap_distance_bfs
from helpers import all_traces, label_universe

SIGMA_A = parse_trace("T1 w x\nT2 r x\nT1 w y")
RHO_A = parse_trace("T1 w x\nT1 w y\nT2 r x")
RHO_B = parse_trace("T2 r x\nT1 w x\nT1 w y")


class TestRfEquivalent:
    def test_reflexive(self):
        assert rf_equivalent(SIGMA_A, SIGMA_A)

    def test_equivalent_pair(self):
        assert rf_equivalent(SIGMA_A, RHO_A)

    def test_orphaned_read_breaks_equivalence(self):
        assert not rf_equivalent(SIGMA_A, RHO_B)

    def test_length_mismatch(self):
        assert not rf_equivalent(SIGMA_A, Trace(()))


class TestPermutation:
    def test_identity(self):
        assert permutation_of(SIGMA_A, SIGMA_A) == (1, 2, 3)

    def test_hand_matched(self):
        assert permutation_of(SIGMA_A, RHO_A) == (1, 3, 2)

    def test_round_robin(self):
        seq, inter = sequential_interleaved_pair(1)
        assert permutation_of(seq, inter) == (1, 4, 2, 5, 3, 6)

    def test_mismatched_multiset_rejected(self):
        with pytest.raises(ValueError):
            permutation_of(SIGMA_A, Trace((read("T1", "x"),) * 3))

    def test_per_thread_sequence_mismatch_rejected(self):
        a = Trace((write("T1", "x"), read("T1", "x")))
        b = Trace((read("T1", "x"), write("T1", "x")))
        with pytest.raises(ValueError):
            permutation_of(a, b)


class TestDropCount:
    def test_identity_has_no_drops(self):
        assert drop_count(SIGMA_A, SIGMA_A) == 0

    def test_single_drop(self):
        assert drop_count(SIGMA_A, RHO_A) == 1

    def test_infinite_when_not_equivalent(self):
        assert drop_count(SIGMA_A, RHO_B) == math.inf

    def test_gradation_witness(self):
        seq, inter = sequential_interleaved_pair(3)
        assert drop_count(seq, inter) == 4

    def test_not_symmetric(self):
        seq, inter = sequential_interleaved_pair(2)
        assert drop_count(seq, inter) == 3
        assert drop_count(inter, seq) == 1


class TestSliceHeight:
    def test_zero_on_equal(self):
        assert slice_height(SIGMA_A, SIGMA_A) == 0

    def test_infinite_on_inequivalent(self):
        assert slice_height(SIGMA_A, RHO_B) == math.inf

    def test_matches_drop_count(self):
        assert slice_height(SIGMA_A, RHO_A) == 1


class TestIsKSlice:
    @pytest.mark.parametrize("k", (1, 2, 3))
    def test_gradation_thresholds(self, k):
        seq, inter = sequential_interleaved_pair(k)
        assert is_k_slice(seq, inter, k + 1)
        assert not is_k_slice(seq, inter, k)

    def test_single_cut_back(self):
        seq, inter = sequential_interleaved_pair(2)
        assert is_k_slice(inter, seq, 1)

    def test_reflexive(self):
        assert is_k_slice(SIGMA_A, SIGMA_A, 1)

    def test_k_must_be_positive(self):
        with pytest.raises(ValueError):
            is_k_slice(SIGMA_A, SIGMA_A, 0)


class TestIndependence:
    def test_conflicting_writes(self):
        assert not independent(write("T1", "x"), write("T2", "x"))

    def test_shared_reads_commute(self):
        assert independent(read("T1", "x"), read("T2", "x"))

    def test_same_thread_never_commutes(self):
        assert not independent(write("T1", "x"), read("T1", "y"))

    def test_transaction_markers_commute_across_threads(self):
        from slicemon import begin, end

        assert independent(begin("T1"), end("T2"))
        assert not independent(begin("T1"), end("T1"))


class TestTraceEquivalent:
    def test_reflexive(self):
        assert trace_equivalent(SIGMA_A, SIGMA_A)

    def test_independent_swap(self):
        a = Trace((read("T1", "x"), read("T2", "x")))
        b = Trace((read("T2", "x"), read("T1", "x")))
        assert trace_equivalent(a, b)

    def test_dependent_pair_projection_differs(self):
        a = Trace((write("T1", "x"), write("T2", "x")))
        b = Trace((write("T2", "x"), write("T1", "x")))
        assert not trace_equivalent(a, b)

    def test_agrees_with_bfs_on_small_traces(self):
        labels = label_universe(locs=("x",))
        for t in all_traces(labels, 4):
            reachable = swap_ball(t, len(t) * len(t) + 1)
            for u in all_traces(labels, 4):
                if len(u) != len(t):
                    continue
                assert trace_equivalent(t, u) == (u in reachable), (t, u)


class TestSwapDistance:
    def test_zero_on_equal(self):
        assert swap_distance(SIGMA_A, SIGMA_A) == 0

    def test_single_inversion(self):
        a = Trace((read("T1", "x"), read("T2", "x")))
        b = Trace((read("T2", "x"), read("T1", "x")))
        assert swap_distance(a, b) == 1

    def test_gradation_family_bfs_verified(self):
        # (k+2)(k+1)/2 adjacent swaps versus k+1 cuts
        for k in (1, 2):
            seq, inter = sequential_interleaved_pair(k)
            expected = (k + 2) * (k + 1) // 2
            assert swap_distance(seq, inter) == expected
            assert swap_distance_bfs(seq, inter) == expected

    def test_infinite_when_not_equivalent(self):
        a = Trace((write("T1", "x"), write("T2", "x")))
        b = Trace((write("T2", "x"), write("T1", "x")))
        assert swap_distance(a, b) == math.inf

    def test_agrees_with_bfs_shortest_path(self):
        labels = label_universe(locs=("x",))
        for t in all_traces(labels, 4):
            for u in swap_ball(t, 6):
                assert swap_distance(t, u) == swap_distance_bfs(t, u)


class TestIsKMaz:
    def test_reflexive(self):
        assert is_k_maz(SIGMA_A, SIGMA_A, 1)

    def test_dependent_flip_rejected_at_any_budget(self):
        a = Trace((write("T1", "x"), write("T2", "x")))
        b = Trace((write("T2", "x"), write("T1", "x")))
        assert not is_k_maz(a, b, 5)

    def test_swap_budget_implies_slice_budget(self):
        labels = label_universe()
        for t in all_traces(labels, 4):
            for k in (1, 2):
                for u in swap_ball(t, k):
                    if u == t:
                        continue
                    assert is_k_slice(t, u, k), (t, u, k)


class TestInvariantSuite:
    """Reflexivity, monotonicity, soundness, and the length bound over
    every reordering pair of an exhaustive set of small traces."""

    def test_over_small_traces(self):
        labels = label_universe()
        for t in all_traces(labels, 4):
            assert drop_count(t, t) == 0
            n = len(t)
            for u in enumerate_rf_reorderings(t):
                d = drop_count(t, u)
                assert d != math.inf
                assert rf_equivalent(t, u)
                if n >= 2:
                    assert is_k_slice(t, u, n - 1)
                for k in range(1, n + 1):
                    if is_k_slice(t, u, k):
                        assert is_k_slice(t, u, k + 1)

    @given(st.lists(st.sampled_from(label_universe()), max_size=7))
    @settings(max_examples=100, deadline=None)
    def test_soundness_gate(self, events):
        t = Trace(tuple(events))
        for u in enumerate_rf_reorderings(t):
            assert is_k_slice(t, u, max(len(t), 1)) or len(t) == 0
