"""Shared fixtures and independent oracles for the test suite."""

from __future__ import annotations

import itertools
import random

from slicemon import Alphabet, Nfa, Trace
from slicemon.preimage import CONSISTENCY_START, consistency_step
from slicemon.traces import Event


def label_universe(threads=("T1", "T2"), locs=("x", "y"), ops="rw") -> list[Event]:
    return [Event(t, op, l) for t in threads for op in ops for l in locs]


def universe_alphabet(threads=("T1", "T2"), locs=("x", "y"), ops="rw") -> Alphabet:
    labels = label_universe(threads, locs, ops)
    return Alphabet(tuple(sorted(set(labels), key=Event.sort_key)))


def random_trace(rng: random.Random, labels, max_len: int) -> Trace:
    n = rng.randint(0, max_len)
    return Trace(tuple(rng.choice(labels) for _ in range(n)))


def all_traces(labels, max_len: int):
    """Every trace up to the given length over the given labels."""
    for n in range(max_len + 1):
        for combo in itertools.product(labels, repeat=n):
            yield Trace(combo)


def run_consistency_automaton(at) -> bool:
    """Feed an annotated trace through the streaming consistency check."""
    state = CONSISTENCY_START
    for event, slice_idx in at.events:
        state = consistency_step(state, event, slice_idx)
        if state is None:
            return False
    return True


def block_cut_decomposable(a: Trace, b: Trace, k: int) -> bool:
    """Direct block-cutting oracle: can ``b`` be split into at most k+1
    contiguous blocks, each of which picks out its events from ``a`` in
    original order, so that the blocks are disjoint subsequences of
    ``a`` concatenating to ``b``?

    Equal labels always belong to one thread, so the event matching is
    the one preserving per-thread order; the search then tries every
    placement of at most k cut points rather than counting descents.
    """
    from slicemon.relations import permutation_of, rf_equivalent

    if len(a) != len(b) or not rf_equivalent(a, b):
        return False
    pi = permutation_of(a, b)
    n = len(pi)
    if n == 0:
        return True
    for j in range(min(k, n - 1) + 1):
        for cuts in itertools.combinations(range(1, n), j):
            bounds = (0,) + cuts + (n,)
            if all(
                all(pi[i] < pi[i + 1] for i in range(lo, hi - 1))
                for lo, hi in zip(bounds, bounds[1:])
            ):
                return True
    return False


def adjacent_pair_spec(first: Event, second: Event, alphabet: Alphabet) -> Nfa:
    """Accepts runs where ``first`` is immediately followed by ``second``."""
    transitions = [(0, lbl, 0) for lbl in alphabet]
    transitions += [(2, lbl, 2) for lbl in alphabet]
    transitions += [(0, first, 1), (1, second, 2)]
    return Nfa(
        alphabet=alphabet,
        n_states=3,
        initial=frozenset({0}),
        accepting=frozenset({2}),
        transitions=tuple(transitions),
    )
