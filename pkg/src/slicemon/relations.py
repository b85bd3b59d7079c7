"""Pairwise relations between traces.

The central quantity is the drop count of the unique thread-monotone
permutation between two runs with equal per-thread event sequences: a
run ``b`` is reachable from ``a`` by cutting ``a`` into at most k+1
subsequences iff the runs are reads-from equivalent and the permutation
has at most k drops.  Swap distance (counting adjacent swaps of
independent events) refines Mazurkiewicz trace equivalence the same
way.

Infinity (math.inf) encodes "not related at all".
"""

from __future__ import annotations

import math
from collections import Counter

from .traces import Event, Trace, reads_from


def permutation_of(a: Trace, b: Trace) -> tuple[int, ...]:
    """The thread-monotone permutation: entry i is the 1-based position
    in ``a`` of the i-th event of ``b``.

    Requires equal per-thread event sequences; the j-th event of a
    thread in ``b`` is matched with the j-th event of that thread in
    ``a``, which is the only matching compatible with program order.
    """
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    queues: dict[str, list[tuple[int, Event]]] = {}
    for pos, e in enumerate(a.events, start=1):
        queues.setdefault(e.thread, []).append((pos, e))
    cursors = {t: 0 for t in queues}
    pi = []
    for e in b.events:
        q = queues.get(e.thread)
        i = cursors.get(e.thread, 0)
        if q is None or i >= len(q):
            raise ValueError(f"thread {e.thread} has extra events in the second trace")
        pos, expected = q[i]
        if expected != e:
            raise ValueError(f"per-thread sequences differ at {e} vs {expected}")
        cursors[e.thread] = i + 1
        pi.append(pos)
    return tuple(pi)


def _rf_matches(a: Trace, b: Trace, pi: tuple[int, ...]) -> bool:
    rf_a = reads_from(a)
    rf_b = reads_from(b)
    mapped = {(pi[r - 1], pi[w - 1]) for r, w in rf_b.items()}
    return mapped == set(rf_a.items())


def rf_equivalent(a: Trace, b: Trace) -> bool:
    """Same program order and same reads-from."""
    try:
        pi = permutation_of(a, b)
    except ValueError:
        return False
    return _rf_matches(a, b, pi)


def drop_count(a: Trace, b: Trace) -> int | float:
    """Number of descents in the thread-monotone permutation, or inf.

    ``b`` can be assembled from at most k+1 disjoint subsequences of
    ``a`` iff this is finite and <= k.
    """
    try:
        pi = permutation_of(a, b)
    except ValueError:
        return math.inf
    if not _rf_matches(a, b, pi):
        return math.inf
    return sum(1 for i in range(len(pi) - 1) if pi[i] > pi[i + 1])


def slice_height(a: Trace, b: Trace) -> int | float:
    """Minimal number of cuts needed to reorder ``a`` into ``b``.

    0 when the traces are identical, inf when they are not reads-from
    equivalent, the drop count otherwise.
    """
    if a == b:
        return 0
    return drop_count(a, b)


def is_k_slice(a: Trace, b: Trace, k: int) -> bool:
    """Is ``b`` reachable from ``a`` using at most k cuts (k+1 slices)?"""
    if k < 1:
        raise ValueError("k must be positive")
    return drop_count(a, b) <= k


def independent(e: Event, f: Event) -> bool:
    """Do the two events commute: different threads and no conflict on a
    shared location (only read-read sharing is allowed)."""
    if e.thread == f.thread:
        return False
    if e.loc is not None and e.loc == f.loc:
        return e.is_read and f.is_read
    return True


def trace_equivalent(a: Trace, b: Trace) -> bool:
    """Mazurkiewicz equivalence: reachability by swaps of adjacent
    independent events, decided by the projection criterion (projections
    onto every dependent label pair coincide)."""
    if len(a) != len(b):
        return False
    if Counter(a.events) != Counter(b.events):
        return False
    labels = sorted(set(a.events), key=Event.sort_key)
    for i, x in enumerate(labels):
        for y in labels[i + 1 :]:
            if independent(x, y):
                continue
            pair = {x, y}
            proj_a = [e for e in a.events if e in pair]
            proj_b = [e for e in b.events if e in pair]
            if proj_a != proj_b:
                return False
    return True


def swap_distance(a: Trace, b: Trace) -> int | float:
    """Minimal number of adjacent independent swaps, or inf.

    Within a trace-equivalence class this equals the inversion count of
    the thread-monotone permutation.
    """
    if not trace_equivalent(a, b):
        return math.inf
    pi = permutation_of(a, b)
    n = len(pi)
    return sum(1 for i in range(n) for j in range(i + 1, n) if pi[i] > pi[j])


def is_k_maz(a: Trace, b: Trace, k: int) -> bool:
    """Is ``b`` within k adjacent independent swaps of ``a``?"""
    if k < 1:
        raise ValueError("k must be positive")
    return swap_distance(a, b) <= k
