"""Brute-force ground truth at desk scale.

Everything here trades efficiency for obviousness: reorderings are
enumerated outright (with reads-from pruning), swap balls are explored
by BFS, and annotation consistency is evaluated straight from its
pairwise conditions.  The faster components of the library are tested
against these oracles.

All entry points take an explicit size bound and refuse larger inputs
instead of silently truncating.
"""

from __future__ import annotations

import math
from typing import Iterator

from .relations import independent, rf_equivalent
from .traces import AnnotatedTrace, Trace, reads_from

DEFAULT_BOUND = 12


class BoundExceededError(ValueError):
    """Input too large for exhaustive enumeration."""


def _check_bound(t: Trace, bound: int) -> None:
    if len(t) > bound:
        raise BoundExceededError(f"trace length {len(t)} exceeds oracle bound {bound}")


def _reorderings_with_positions(t: Trace) -> Iterator[tuple[int, ...]]:
    """Yield every program-order-respecting interleaving that preserves
    reads-from, as a tuple of original 1-based positions.

    A partial interleaving is abandoned as soon as an emitted read would
    observe a different write than in the original run.
    """
    rf0 = reads_from(t)
    by_thread = list(t.positions_by_thread().values())
    n = len(t)
    cursors = [0] * len(by_thread)
    prefix: list[int] = []
    last_write: dict[str, int | None] = {}

    def emit() -> Iterator[tuple[int, ...]]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for ti, queue in enumerate(by_thread):
            ci = cursors[ti]
            if ci >= len(queue):
                continue
            pos = queue[ci]
            e = t.at(pos)
            saved = None
            if e.is_read:
                if last_write.get(e.loc) != rf0.get(pos):
                    continue
            elif e.is_write:
                saved = last_write.get(e.loc)
                last_write[e.loc] = pos
            cursors[ti] = ci + 1
            prefix.append(pos)
            yield from emit()
            prefix.pop()
            cursors[ti] = ci
            if e.is_write:
                last_write[e.loc] = saved

    yield from emit()


def _drops(seq: tuple[int, ...]) -> int:
    return sum(1 for i in range(len(seq) - 1) if seq[i] > seq[i + 1])


def _inverse_drops(seq: tuple[int, ...]) -> int:
    inv = [0] * len(seq)
    for i, pos in enumerate(seq):
        inv[pos - 1] = i
    return sum(1 for i in range(len(inv) - 1) if inv[i] > inv[i + 1])


def enumerate_rf_reorderings(t: Trace, bound: int = DEFAULT_BOUND) -> Iterator[Trace]:
    """All reorderings reads-from equivalent to ``t`` (including ``t``)."""
    _check_bound(t, bound)
    for positions in _reorderings_with_positions(t):
        yield Trace(tuple(t.at(p) for p in positions))


def oracle_pre(t: Trace, spec, k: int, bound: int = DEFAULT_BOUND) -> bool:
    """Is some reordering of ``t`` within k cuts a member of the spec?"""
    _check_bound(t, bound)
    for positions in _reorderings_with_positions(t):
        if _drops(positions) <= k and spec.accepts(Trace(tuple(t.at(p) for p in positions))):
            return True
    return False


def oracle_post(t: Trace, spec, k: int, bound: int = DEFAULT_BOUND) -> bool:
    """Is ``t`` within k cuts of some spec member (reversed direction)?"""
    _check_bound(t, bound)
    for positions in _reorderings_with_positions(t):
        if _inverse_drops(positions) <= k and spec.accepts(
            Trace(tuple(t.at(p) for p in positions))
        ):
            return True
    return False


def swap_ball(t: Trace, k: int, bound: int = DEFAULT_BOUND) -> set[Trace]:
    """All traces reachable from ``t`` by at most k swaps of adjacent
    independent events."""
    _check_bound(t, bound)
    seen = {t}
    frontier = [t]
    for _ in range(k):
        nxt = []
        for cur in frontier:
            ev = cur.events
            for i in range(len(ev) - 1):
                if independent(ev[i], ev[i + 1]):
                    cand = Trace(ev[:i] + (ev[i + 1], ev[i]) + ev[i + 2 :])
                    if cand not in seen:
                        seen.add(cand)
                        nxt.append(cand)
        if not nxt:
            break
        frontier = nxt
    return seen


def swap_distance_bfs(a: Trace, b: Trace, bound: int = DEFAULT_BOUND) -> int | float:
    """Shortest-path swap distance by BFS over the whole class."""
    _check_bound(a, bound)
    if a == b:
        return 0
    seen = {a: 0}
    frontier = [a]
    while frontier:
        nxt = []
        for cur in frontier:
            ev = cur.events
            for i in range(len(ev) - 1):
                if independent(ev[i], ev[i + 1]):
                    cand = Trace(ev[:i] + (ev[i + 1], ev[i]) + ev[i + 2 :])
                    if cand not in seen:
                        seen[cand] = seen[cur] + 1
                        if cand == b:
                            return seen[cand]
                        nxt.append(cand)
        frontier = nxt
    return math.inf


def repeated_slice_reachable(
    a: Trace, b: Trace, max_steps: int, bound: int = DEFAULT_BOUND
) -> bool:
    """Can ``b`` be reached from ``a`` by at most ``max_steps`` single-cut
    reordering moves?"""
    _check_bound(a, bound)
    if max_steps < 0:
        raise ValueError("max_steps must be non-negative")
    if a == b:
        return True
    seen = {a}
    frontier = [a]
    for _ in range(max_steps):
        nxt = []
        for cur in frontier:
            for positions in _reorderings_with_positions(cur):
                if _drops(positions) > 1:
                    continue
                cand = Trace(tuple(cur.at(p) for p in positions))
                if cand in seen:
                    continue
                if cand == b:
                    return True
                seen.add(cand)
                nxt.append(cand)
        if not nxt:
            return False
        frontier = nxt
    return False


def annotation_consistent_pairwise(at: AnnotatedTrace) -> bool:
    """Check slice-annotation consistency from its pairwise conditions.

    Slices must not decrease along any thread, and for every read the
    annotation must keep its original source (or orphanhood) intact:
    conflicting writes may only sit in slices at or before the source's
    slice, or at or after the read's slice, with the two boundary cases
    additionally constrained by the original order.
    """
    t = at.plain()
    slices = at.slices()
    rf = reads_from(t)
    last: dict[str, int] = {}
    for pos, e in enumerate(t.events, start=1):
        s = slices[pos - 1]
        prev = last.get(e.thread)
        if prev is not None and prev > s:
            return False
        last[e.thread] = s
    writes_on: dict[str, list[int]] = {}
    for pos, e in enumerate(t.events, start=1):
        if e.is_write:
            writes_on.setdefault(e.loc, []).append(pos)
    for pos, e in enumerate(t.events, start=1):
        if not e.is_read:
            continue
        i = slices[pos - 1]
        src = rf.get(pos)
        if src is None:
            if any(slices[w - 1] < i for w in writes_on.get(e.loc, ())):
                return False
            continue
        j = slices[src - 1]
        if j > i:
            return False
        for w in writes_on.get(e.loc, ()):
            if w == src:
                continue
            ell = slices[w - 1]
            if not (ell <= j or ell >= i):
                return False
            if ell == i and j < i and not pos < w:
                return False
            if ell == j and j < i and not w < src:
                return False
    return True


def annotation_consistent_concat(at: AnnotatedTrace) -> bool:
    """Check consistency by building the reordering the annotation
    denotes (slice subsequences concatenated in order) and testing
    reads-from equivalence against the original.

    The slice subsequences carry event occurrences, so program order
    and reads-from are compared over original positions rather than
    re-derived from the concatenated label string; duplicate labels
    would otherwise be silently re-matched.
    """
    t = at.plain()
    rf0 = reads_from(t)
    parts: list[list[int]] = [[] for _ in range(at.k + 1)]
    for pos, (_, s) in enumerate(at.events, start=1):
        parts[s - 1].append(pos)
    order = [pos for part in parts for pos in part]
    last_pos_of_thread: dict[str, int] = {}
    last_write: dict[str, int] = {}
    for pos in order:
        e = t.at(pos)
        if last_pos_of_thread.get(e.thread, 0) > pos:
            return False
        last_pos_of_thread[e.thread] = pos
        if e.is_read:
            if last_write.get(e.loc) != rf0.get(pos):
                return False
        elif e.is_write:
            last_write[e.loc] = pos
    return True
