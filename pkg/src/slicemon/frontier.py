"""Offline frontier-graph deciders for slice-bounded membership.

Both directions explore graphs whose nodes are downward-closed sets of
already-emitted events ("frontiers"), with specification state sets
propagated along edges.  The forward direction tracks a drop budget on
the position of the last emitted event; the backward direction
enumerates cut points of the input and searches shuffles of the
resulting blocks.

Besides program order and the write-closure condition (a write may only
be emitted once every reader of the previous same-location writes has
been emitted), edges require the read-source condition: a read may only
be emitted when its own source is already in (or, for an orphan read,
when no same-location write is in).  Without it, paths could spell
runs that silently rewire reads.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .automata import Nfa
from .traces import Trace, reads_from


@dataclass(frozen=True)
class FrontierResult:
    verdict: bool
    witness: Trace | None
    nodes_explored: int


@dataclass(frozen=True)
class _TraceIndex:
    """Per-trace lookup tables shared by both search directions."""

    labels: tuple[int, ...]  # alphabet index per position (0-based list, 1-based pos)
    thread_of: tuple[int, ...]
    index_in_thread: tuple[int, ...]
    by_thread: tuple[tuple[int, ...], ...]
    rf: dict[int, int]
    writes_on: dict[str, tuple[int, ...]]
    readers: dict[int, tuple[int, ...]]
    po_pred: tuple[int | None, ...]


def _index_trace(t: Trace, spec: Nfa) -> _TraceIndex:
    labels = tuple(spec.alphabet.index_of(e) for e in t.events)
    threads = t.threads()
    thread_ids = {name: i for i, name in enumerate(threads)}
    by_thread: list[list[int]] = [[] for _ in threads]
    thread_of = []
    index_in_thread = []
    last_pos: dict[str, int] = {}
    po_pred: list[int | None] = []
    for pos, e in enumerate(t.events, start=1):
        ti = thread_ids[e.thread]
        thread_of.append(ti)
        index_in_thread.append(len(by_thread[ti]))
        by_thread[ti].append(pos)
        po_pred.append(last_pos.get(e.thread))
        last_pos[e.thread] = pos
    rf = reads_from(t)
    writes_on: dict[str, list[int]] = {}
    for pos, e in enumerate(t.events, start=1):
        if e.is_write:
            writes_on.setdefault(e.loc, []).append(pos)
    readers: dict[int, list[int]] = {}
    for r, w in rf.items():
        readers.setdefault(w, []).append(r)
    return _TraceIndex(
        labels=labels,
        thread_of=tuple(thread_of),
        index_in_thread=tuple(index_in_thread),
        by_thread=tuple(tuple(q) for q in by_thread),
        rf=rf,
        writes_on={x: tuple(v) for x, v in writes_on.items()},
        readers={w: tuple(sorted(v)) for w, v in readers.items()},
        po_pred=tuple(po_pred),
    )


def _spell(parents, node, state, t: Trace) -> Trace:
    positions = []
    while True:
        entry = parents[node][state]
        if entry is None:
            break
        node, state, pos = entry
        positions.append(pos)
    return Trace(tuple(t.at(p) for p in reversed(positions)))


def frontier_pre(t: Trace, spec: Nfa, k: int) -> FrontierResult:
    """Does some <=k-cut reordering of ``t`` lie in the spec language?

    Nodes are (per-thread counts, last emitted position, drops used).
    Returns a witness reordering when the verdict is positive.
    """
    if k < 1:
        raise ValueError("k must be positive")
    idx = _index_trace(t, spec)
    n = len(t)
    n_threads = len(idx.by_thread)

    def in_x(counts: tuple[int, ...], pos: int) -> bool:
        return idx.index_in_thread[pos - 1] < counts[idx.thread_of[pos - 1]]

    start = (tuple([0] * n_threads), 0, 0)
    # parents[node][q] = (prev_node, prev_q, emitted position) or None at the start
    parents: dict[tuple, dict[int, tuple | None]] = {
        start: {q: None for q in spec.initial}
    }
    level = [start]
    nodes_explored = 1
    empty_ok = spec.initial & spec.accepting
    if n == 0:
        witness = Trace(()) if empty_ok else None
        return FrontierResult(bool(empty_ok), witness, nodes_explored)

    for _ in range(n):
        next_level: dict[tuple, dict[int, tuple | None]] = {}
        for node in level:
            counts, last, drops = node
            states = parents[node]
            for ti in range(n_threads):
                queue = idx.by_thread[ti]
                ci = counts[ti]
                if ci >= len(queue):
                    continue
                pos = queue[ci]
                e = t.at(pos)
                if e.is_write:
                    # write-closure: earlier same-location writes must be fully read
                    blocked = False
                    for w in idx.writes_on.get(e.loc, ()):
                        if w != pos and in_x(counts, w):
                            for r in idx.readers.get(w, ()):
                                if not in_x(counts, r):
                                    blocked = True
                                    break
                        if blocked:
                            break
                    if blocked:
                        continue
                elif e.is_read:
                    src = idx.rf.get(pos)
                    if src is None:
                        if any(in_x(counts, w) for w in idx.writes_on.get(e.loc, ())):
                            continue
                    elif not in_x(counts, src):
                        continue
                drops2 = drops + (1 if last > pos else 0)
                if drops2 > k:
                    continue
                counts2 = counts[:ti] + (ci + 1,) + counts[ti + 1 :]
                node2 = (counts2, pos, drops2)
                target = next_level.setdefault(node2, {})
                label = idx.labels[pos - 1]
                for q in states:
                    mask = spec.step_mask(1 << q, label)
                    while mask:
                        low = mask & -mask
                        q2 = low.bit_length() - 1
                        if q2 not in target:
                            target[q2] = (node, q, pos)
                        mask ^= low
        next_level = {node: st for node, st in next_level.items() if st}
        parents.update(next_level)
        level = list(next_level)
        nodes_explored += len(next_level)

    full = tuple(len(q) for q in idx.by_thread)
    thread_totals = 1
    for q in idx.by_thread:
        thread_totals *= len(q) + 1
    assert nodes_explored <= (k + 1) * (n + 1) * thread_totals

    for node in level:
        counts, _, _ = node
        if counts != full:
            continue
        for q in parents[node]:
            if q in spec.accepting:
                return FrontierResult(True, _spell(parents, node, q, t), nodes_explored)
    return FrontierResult(False, None, nodes_explored)


def _cut_blocks(n: int, cuts: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    bounds = (0,) + cuts + (n,)
    return tuple(
        tuple(range(bounds[j] + 1, bounds[j + 1] + 1)) for j in range(len(bounds) - 1)
    )


def frontier_post(t: Trace, spec: Nfa, k: int) -> FrontierResult:
    """Is ``t`` within k cuts of some spec member?

    Enumerates cut points of ``t`` (fewer cuts subsume coincident ones)
    and searches shuffles of the resulting blocks under program order,
    write-closure, and read-source conditions.
    """
    if k < 1:
        raise ValueError("k must be positive")
    idx = _index_trace(t, spec)
    n = len(t)
    nodes_explored = 0
    empty_ok = spec.initial & spec.accepting
    if n == 0:
        witness = Trace(()) if empty_ok else None
        return FrontierResult(bool(empty_ok), witness, 1)

    for n_cuts in range(min(k, n - 1) + 1):
        for cuts in combinations(range(1, n), n_cuts):
            blocks = _cut_blocks(n, cuts)
            result = _search_blocks(t, spec, idx, blocks)
            nodes_explored += result.nodes_explored
            if result.verdict:
                return FrontierResult(True, result.witness, nodes_explored)
    return FrontierResult(False, None, nodes_explored)


def _search_blocks(
    t: Trace, spec: Nfa, idx: _TraceIndex, blocks: tuple[tuple[int, ...], ...]
) -> FrontierResult:
    n = len(t)
    block_of = [0] * n
    index_in_block = [0] * n
    for bi, block in enumerate(blocks):
        for i, pos in enumerate(block):
            block_of[pos - 1] = bi
            index_in_block[pos - 1] = i

    def in_x(counts: tuple[int, ...], pos: int) -> bool:
        return index_in_block[pos - 1] < counts[block_of[pos - 1]]

    start = tuple([0] * len(blocks))
    parents: dict[tuple, dict[int, tuple | None]] = {
        start: {q: None for q in spec.initial}
    }
    level = [start]
    nodes_explored = 1
    for _ in range(n):
        next_level: dict[tuple, dict[int, tuple | None]] = {}
        for counts in level:
            states = parents[counts]
            for bi, block in enumerate(blocks):
                ci = counts[bi]
                if ci >= len(block):
                    continue
                pos = block[ci]
                pred = idx.po_pred[pos - 1]
                if pred is not None and not in_x(counts, pred):
                    continue
                e = t.at(pos)
                if e.is_write:
                    blocked = False
                    for w in idx.writes_on.get(e.loc, ()):
                        if w != pos and in_x(counts, w):
                            for r in idx.readers.get(w, ()):
                                if not in_x(counts, r):
                                    blocked = True
                                    break
                        if blocked:
                            break
                    if blocked:
                        continue
                elif e.is_read:
                    src = idx.rf.get(pos)
                    if src is None:
                        if any(in_x(counts, w) for w in idx.writes_on.get(e.loc, ())):
                            continue
                    elif not in_x(counts, src):
                        continue
                counts2 = counts[:bi] + (ci + 1,) + counts[bi + 1 :]
                target = next_level.setdefault(counts2, {})
                label = idx.labels[pos - 1]
                for q in states:
                    mask = spec.step_mask(1 << q, label)
                    while mask:
                        low = mask & -mask
                        q2 = low.bit_length() - 1
                        if q2 not in target:
                            target[q2] = (counts, q, pos)
                        mask ^= low
        next_level = {node: st for node, st in next_level.items() if st}
        parents.update(next_level)
        level = list(next_level)
        nodes_explored += len(next_level)

    full = tuple(len(b) for b in blocks)
    for counts in level:
        if counts != full:
            continue
        for q in parents[counts]:
            if q in spec.accepting:
                return FrontierResult(True, _spell(parents, counts, q, t), nodes_explored)
    return FrontierResult(False, None, nodes_explored)
