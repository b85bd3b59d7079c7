import itertools

import pytest

from slicemon import (
    alphabet_of,
    bitstring_equality_trace,
    drop_count,
    frontier_post,
    independent_set_trace,
    nontransitive_triple,
    oracle_post,
    reads_from,
    rf_equivalent,
    sequential_interleaved_pair,
    spec_order_violation,
    write,
)
from helpers import adjacent_pair_spec


class TestSequentialInterleaved:
    def test_k1_layout(self):
        seq, inter = sequential_interleaved_pair(1)
        assert [e.thread for e in seq] == ["T1"] * 3 + ["T2"] * 3
        assert [e.thread for e in inter] == ["T1", "T2"] * 3
        assert all(e.is_read and e.loc == "x" for e in seq)

    @pytest.mark.parametrize("k", range(1, 7))
    def test_drop_counts(self, k):
        seq, inter = sequential_interleaved_pair(k)
        assert rf_equivalent(seq, inter)
        assert drop_count(seq, inter) == k + 1
        assert drop_count(inter, seq) == 1

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            sequential_interleaved_pair(0)


class TestNontransitive:
    @pytest.mark.parametrize("k", (1, 2, 3))
    def test_inequalities(self, k):
        s, r, g = nontransitive_triple(k)
        assert drop_count(s, r) <= k
        assert drop_count(r, g) <= k
        assert drop_count(s, g) >= 2 * k

    @pytest.mark.parametrize("k", (1, 2, 3))
    def test_pairwise_rf_equivalent(self, k):
        s, r, g = nontransitive_triple(k)
        assert rf_equivalent(s, r) and rf_equivalent(r, g) and rf_equivalent(s, g)

    def test_shape(self):
        s, r, g = nontransitive_triple(2)
        for t in (s, r, g):
            assert len(t) == 12  # 2k+2 events per thread, two threads
            assert all(e.is_read for e in t)


class TestBitstringEquality:
    def test_smallest_instance(self):
        t = bitstring_equality_trace("0#0")
        assert len(t) == 10
        assert set(t.locations()) == {"x0", "x1", "c", "u"}
        assert set(t.threads()) == {"t1", "t2"}

    def test_differing_bit_reads_other_location(self):
        t = bitstring_equality_trace("0#1")
        reads_x = [e for e in t if e.is_read and e.loc.startswith("x")]
        assert [e.loc for e in reads_x] == ["x1"]

    def test_two_bit_length(self):
        # 3 + 4 + 3 events on t1, then 2 + 2 + 2 on t2
        assert len(bitstring_equality_trace("10#10")) == 16

    @pytest.mark.parametrize("n", (1, 2, 3))
    def test_no_orphan_reads(self, n):
        for bits in itertools.product("01", repeat=2 * n):
            w = "".join(bits[:n]) + "#" + "".join(bits[n:])
            t = bitstring_equality_trace(w)
            rf = reads_from(t)
            for pos in range(1, len(t) + 1):
                if t.at(pos).is_read:
                    assert pos in rf, (w, pos)

    @pytest.mark.parametrize("w", ("", "01", "0#", "0#01", "2#1", "0#1#0"))
    def test_malformed_rejected(self, w):
        with pytest.raises(ValueError):
            bitstring_equality_trace(w)

    def test_flip_dichotomy_small(self):
        # the two u-writes can be reordered exactly when the halves differ
        for w, expect in (("0#0", False), ("0#1", True), ("11#11", False), ("10#11", True)):
            t = bitstring_equality_trace(w)
            spec = spec_order_violation(write("t1", "u"), write("t2", "u"), alphabet_of(t))
            assert frontier_post(t, spec, 1).verdict == expect, w


class TestIndependentSet:
    def test_triangle_shape(self):
        t = independent_set_trace({1: [2, 3], 2: [1, 3], 3: [1, 2]}, c=1)
        assert set(t.threads()) == {"t1", "t2", "t3", "t4"}
        # every lock release reads its own acquire; no orphan reads at all
        rf = reads_from(t)
        for pos in range(1, len(t) + 1):
            if t.at(pos).is_read:
                assert pos in rf

    def test_single_vertex_post_membership(self):
        t = independent_set_trace({1: []}, c=1)
        spec = adjacent_pair_spec(write("t3", "x"), t.at(len(t) - 1), alphabet_of(t))
        # reader's r(x) is the second-to-last event of the trace
        assert t.at(len(t) - 1).is_read and t.at(len(t) - 1).loc == "x"
        assert oracle_post(t, spec, 2, bound=16)

    def test_path_c2_witness_at_k8(self):
        t = independent_set_trace({1: [2], 2: [1, 3], 3: [2]}, c=2)
        first = write("t5", "x")
        last_read = next(
            t.at(p) for p in range(len(t), 0, -1) if t.at(p).thread == "t6" and t.at(p).loc == "x"
        )
        spec = adjacent_pair_spec(first, last_read, alphabet_of(t))
        result = frontier_post(t, spec, 8)
        assert result.verdict
        assert rf_equivalent(result.witness, t)
        assert drop_count(result.witness, t) <= 8

    def test_malformed_graphs_rejected(self):
        with pytest.raises(ValueError):
            independent_set_trace({}, c=1)
        with pytest.raises(ValueError):
            independent_set_trace({1: [1]}, c=1)
        with pytest.raises(ValueError):
            independent_set_trace({1: [2]}, c=1)  # asymmetric edge
        with pytest.raises(ValueError):
            independent_set_trace({1: []}, c=0)
