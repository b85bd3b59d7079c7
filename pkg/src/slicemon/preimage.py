"""Constant-space streaming monitor for slice-bounded predictive membership.

The monitor answers, online, whether the trace read so far can be cut
into at most k+1 subsequences whose in-order concatenation is a sound
reordering (reads-from equivalent) that the specification accepts.  It
simulates, per slice guess, two deterministic components:

* a consistency check that tracks, per thread and location, enough
  slice-index summaries to reject impossible annotations on the fly;
* an out-of-order simulation table for the (determinized) spec that
  records, per slice and start state, where the spec automaton would be
  after reading just that slice's events.

A frontier of (consistency, table) pairs realizes the nondeterministic
slice guessing in constant space for fixed alphabet, spec, and k.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automata import Dfa, Nfa, determinize
from .traces import Event, Trace


@dataclass(frozen=True)
class ConsistencyState:
    """Summaries per thread/location, canonically sorted and sparse.

    ``thread_slice`` records the largest slice seen per thread,
    ``last_write`` the slice of the most recent write per location,
    ``seen_writes`` every slice holding a write per location, and
    ``forbidden_writes`` slices that must not receive further writes.
    Zero entries and empty sets are omitted.
    """

    thread_slice: tuple[tuple[str, int], ...] = ()
    last_write: tuple[tuple[str, int], ...] = ()
    seen_writes: tuple[tuple[str, frozenset[int]], ...] = ()
    forbidden_writes: tuple[tuple[str, frozenset[int]], ...] = ()


CONSISTENCY_START = ConsistencyState()


def consistency_step(
    state: ConsistencyState, event: Event, slice_idx: int
) -> ConsistencyState | None:
    """Advance the consistency summary; None is the rejecting sink."""
    t2s = dict(state.thread_slice)
    if t2s.get(event.thread, 0) > slice_idx:
        return None
    if event.loc is None:
        # begin/end: only the per-thread watermark moves
        t2s[event.thread] = slice_idx
        return ConsistencyState(
            tuple(sorted(t2s.items())),
            state.last_write,
            state.seen_writes,
            state.forbidden_writes,
        )
    x = event.loc
    lastw = dict(state.last_write)
    seenw = dict(state.seen_writes)
    forbidden = dict(state.forbidden_writes)
    lw = lastw.get(x, 0)
    if event.is_write:
        if slice_idx in forbidden.get(x, ()):
            return None
        lastw[x] = slice_idx
        seenw[x] = seenw.get(x, frozenset()) | {slice_idx}
    else:
        seen = seenw.get(x, frozenset())
        if lw > slice_idx or any(lw < s <= slice_idx for s in seen):
            return None
        if slice_idx > max(1, lw):
            extra = frozenset(range(max(1, lw), slice_idx))
            forbidden[x] = forbidden.get(x, frozenset()) | extra
    t2s[event.thread] = slice_idx
    return ConsistencyState(
        tuple(sorted(t2s.items())),
        tuple(sorted(lastw.items())),
        tuple(sorted(seenw.items())),
        tuple(sorted(forbidden.items())),
    )


SliceTable = tuple[tuple[int, ...], ...]


def slice_table_initial(n_states: int, k: int) -> SliceTable:
    """Row per slice, mapping each start state to itself."""
    identity = tuple(range(n_states))
    return (identity,) * (k + 1)


def slice_table_step(table: SliceTable, dfa: Dfa, label_idx: int, slice_idx: int) -> SliceTable:
    """Advance the row of ``slice_idx`` by one spec transition."""
    row = table[slice_idx - 1]
    new_row = tuple(dfa.delta[p][label_idx] for p in row)
    return table[: slice_idx - 1] + (new_row,) + table[slice_idx:]


def slice_table_accepting(table: SliceTable, dfa: Dfa) -> bool:
    """Chain the per-slice runs: feed slice 1 from the spec's start
    state and each later slice from where the previous one ended."""
    p = dfa.initial
    for row in table:
        p = row[p]
    return p in dfa.accepting


class PreimageMonitor:
    """Streaming decider for "some <=k-cut reordering lies in the spec".

    Feed events with :meth:`step`; :meth:`verdict` may be read at any
    prefix.  ``max_states`` exposes the high-water mark of the frontier
    so constant-space behaviour is observable.
    """

    def __init__(self, spec: Nfa | Dfa, k: int):
        if k < 1:
            raise ValueError("k must be positive")
        self.dfa = spec if isinstance(spec, Dfa) else determinize(spec)
        self.k = k
        self.alphabet = self.dfa.alphabet
        start = (CONSISTENCY_START, slice_table_initial(self.dfa.n_states, k))
        self.frontier: frozenset[tuple[ConsistencyState, SliceTable]] = frozenset({start})
        self.steps = 0
        self.max_states = 1
        # successors of a frontier pair are deterministic per label, and
        # the reachable pairs are finitely many, so this cache stays
        # bounded for a fixed spec, alphabet, and k
        self._successors: dict[tuple, tuple] = {}

    def step(self, event: Event) -> None:
        label_idx = self.alphabet.index_of(event)
        nxt = set()
        for pair in self.frontier:
            key = (pair, label_idx)
            succ = self._successors.get(key)
            if succ is None:
                cnst, table = pair
                collected = []
                for slice_idx in range(1, self.k + 2):
                    cnst2 = consistency_step(cnst, event, slice_idx)
                    if cnst2 is None:
                        continue
                    collected.append(
                        (cnst2, slice_table_step(table, self.dfa, label_idx, slice_idx))
                    )
                succ = tuple(collected)
                self._successors[key] = succ
            nxt.update(succ)
        self.frontier = frozenset(nxt)
        self.steps += 1
        if len(self.frontier) > self.max_states:
            self.max_states = len(self.frontier)

    def verdict(self) -> bool:
        return any(slice_table_accepting(table, self.dfa) for _, table in self.frontier)

    def run(self, t: Trace) -> bool:
        for e in t:
            self.step(e)
        return self.verdict()


def monitor_run(t: Trace, spec: Nfa | Dfa, k: int) -> bool:
    """One-shot convenience wrapper around :class:`PreimageMonitor`."""
    return PreimageMonitor(spec, k).run(t)
