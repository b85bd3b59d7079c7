"""Predictive monitoring modulo a bounded number of adjacent swaps.

A specification automaton is augmented k times by a single-swap layer:
each layer lets the automaton read one adjacent pair of independent
events in flipped order.  Because the swap relation is symmetric, the
same automaton answers both the forward and the backward membership
question.

Each layer enforces *at most one* swap: states carry a swap-consumed
flag alongside the waiting states, so that k layers accept exactly the
words within k swaps of the specification.
"""

from __future__ import annotations

from .automata import Dfa, Nfa
from .relations import independent
from .traces import Trace


def _layer_states(nfa: Nfa) -> Nfa:
    """One single-swap layer on top of the given automaton.

    States are (q, used) pairs plus waiting states (q, b, a) entered on
    reading ``b`` while guessing that the swapped partner ``a`` comes
    next; resolving a waiting state lands wherever reading ``a`` then
    ``b`` would have, with the swap budget of this layer consumed.
    """
    labels = nfa.alphabet.labels
    n = nfa.n_states
    fresh = {(q, 0): q for q in range(n)}
    fresh.update({(q, 1): n + q for q in range(n)})
    next_id = 2 * n
    waiting: dict[tuple[int, int, int], int] = {}
    indep_partners = {
        bi: [ai for ai, a in enumerate(labels) if independent(a, b)]
        for bi, b in enumerate(labels)
    }

    transitions: list[tuple[int, object, int]] = []
    for src, lbl, dst in nfa.transitions:
        transitions.append((fresh[(src, 0)], lbl, fresh[(dst, 0)]))
        transitions.append((fresh[(src, 1)], lbl, fresh[(dst, 1)]))
    for q in range(n):
        for bi, b in enumerate(labels):
            partners = indep_partners[bi]
            if not partners:
                continue
            for ai in partners:
                key = (q, bi, ai)
                if key not in waiting:
                    waiting[key] = next_id
                    next_id += 1
                transitions.append((fresh[(q, 0)], b, waiting[key]))
                # resolve: states reachable from q via a then b, swap used
                mid = nfa.step_mask(1 << q, ai)
                out = nfa.step_mask(mid, bi)
                a = labels[ai]
                while out:
                    low = out & -out
                    transitions.append((waiting[key], a, fresh[(low.bit_length() - 1, 1)]))
                    out ^= low

    initial = frozenset(fresh[(q, 0)] for q in nfa.initial)
    accepting = frozenset(fresh[(q, u)] for q in nfa.accepting for u in (0, 1))
    return Nfa(
        alphabet=nfa.alphabet,
        n_states=next_id,
        initial=initial,
        accepting=accepting,
        transitions=tuple(transitions),
    )


def _as_nfa(dfa: Dfa) -> Nfa:
    transitions = tuple(
        (s, lbl, dfa.delta[s][i])
        for s in range(dfa.n_states)
        for i, lbl in enumerate(dfa.alphabet.labels)
    )
    return Nfa(
        alphabet=dfa.alphabet,
        n_states=dfa.n_states,
        initial=frozenset({dfa.initial}),
        accepting=dfa.accepting,
        transitions=transitions,
    )


def build_kmaz_nfa(spec: Dfa, k: int) -> Nfa:
    """Automaton for membership within k adjacent independent swaps of
    the specification (forward and backward coincide)."""
    if k < 1:
        raise ValueError("k must be positive")
    nfa = _as_nfa(spec)
    for _ in range(k):
        nfa = _layer_states(nfa)
    return nfa


def kmaz_monitor_run(t: Trace, spec: Dfa, k: int) -> bool:
    """Does some spec member lie within k swaps of ``t``?"""
    return build_kmaz_nfa(spec, k).accepts(t)
