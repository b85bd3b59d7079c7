"""Generators for witness trace families.

Each family is a small parametric construction used to exercise corner
cases of the slice-reordering relations: a pair separating k cuts from
k+1, a triple showing that bounded slicing does not compose, a
two-thread run whose reorderability encodes equality of two bitstrings,
and a many-thread run encoding an independent-set instance.
"""

from __future__ import annotations

from .traces import Event, Trace, read, write


def sequential_interleaved_pair(k: int) -> tuple[Trace, Trace]:
    """Two-thread read-only pair (sequential, round-robin), k+2 events each.

    The round-robin order needs k+1 cuts of the sequential one, while a
    single cut suffices in the opposite direction.
    """
    if k < 1:
        raise ValueError("k must be positive")
    rounds = k + 2
    t1 = [read("T1", "x")] * rounds
    t2 = [read("T2", "x")] * rounds
    seq = Trace(tuple(t1 + t2))
    inter = []
    for a, b in zip(t1, t2):
        inter.extend((a, b))
    return seq, Trace(tuple(inter))


def nontransitive_triple(k: int) -> tuple[Trace, Trace, Trace]:
    """Read-only triple (s, r, g) with 2k+2 events per thread such that
    r is within k cuts of s and g within k cuts of r, but g needs at
    least 2k cuts of s.
    """
    if k < 1:
        raise ValueError("k must be positive")
    n = 2 * k + 2
    a = [read("T1", "x")] * n
    b = [read("T2", "x")] * n
    s = Trace(tuple(a + b))
    # pairs of T1 events alternating with pairs of T2 events
    r_events: list[Event] = []
    for m in range(0, n, 2):
        r_events.extend((a[m], a[m + 1], b[m], b[m + 1]))
    # first pair as in r, then strictly alternating
    g_events: list[Event] = [a[0], a[1], b[0], b[1]]
    for j in range(2, n):
        g_events.extend((a[j], b[j]))
    return s, Trace(tuple(r_events)), Trace(tuple(g_events))


def bitstring_equality_trace(w: str) -> Trace:
    """Two-thread run encoding a word ``a1..an#b1..bn`` over {0,1}.

    Thread t1 emits one fragment per a-bit followed by a u-block, thread
    t2 one fragment per b-bit followed by its own u-block.  The two
    u-writes can be flipped by a sound reordering exactly when the two
    bitstrings differ.
    """
    parts = w.split("#")
    if len(parts) != 2:
        raise ValueError("expected 'BITS#BITS'")
    a, b = parts
    if len(a) != len(b) or not a or set(a + b) - {"0", "1"}:
        raise ValueError("expected two equal-length non-empty bitstrings over {0,1}")
    ev: list[Event] = []
    # t1 fragments: the first writes both x-locations around a write to c,
    # later ones touch y_{a_i} around a read/write of c
    ev += [write("t1", f"x{1 - int(a[0])}"), write("t1", "c"), write("t1", f"x{a[0]}")]
    for bit in a[1:]:
        ev += [
            write("t1", f"y{bit}"),
            read("t1", "c"),
            write("t1", "c"),
            read("t1", f"y{bit}"),
        ]
    ev += [write("t1", "u"), read("t1", "c"), read("t1", "u")]
    # t2 fragments mirror the b-bits
    ev += [read("t2", f"x{b[0]}"), write("t2", "c")]
    for bit in b[1:]:
        ev += [write("t2", f"y{bit}"), write("t2", "c")]
    ev += [write("t2", "u"), read("t2", "u")]
    return Trace(tuple(ev))


def _edge_lock(u: int, v: int) -> str:
    lo, hi = (u, v) if u < v else (v, u)
    return f"l_{lo}_{hi}"


def independent_set_trace(adjacency: dict[int, list[int]], c: int) -> Trace:
    """Run over 2c+2 threads encoding an independent-set instance.

    ``adjacency`` maps each vertex to its neighbours (simple undirected
    graph).  Lock acquire/release pairs are encoded as a write/read pair
    on a distinguished location, related by reads-from.  A reordering
    placing the first thread's write to ``x`` right before the last
    thread's read of ``x`` exists iff the graph has an independent set
    of size c.
    """
    if c < 1:
        raise ValueError("c must be positive")
    vertices = sorted(adjacency)
    if not vertices:
        raise ValueError("graph must have at least one vertex")
    neighbours = {v: sorted(set(adjacency[v])) for v in vertices}
    for v, nbrs in neighbours.items():
        for u in nbrs:
            if u == v:
                raise ValueError(f"self-loop at vertex {v}")
            if u not in neighbours or v not in neighbours[u]:
                raise ValueError(f"edge {v}-{u} not symmetric")

    n = len(vertices)
    writer = f"t{2 * c + 1}"
    reader = f"t{2 * c + 2}"
    ev: list[Event] = [write(writer, "x")]

    for i in range(1, c + 1):
        main = f"t{i}"
        aux = f"t{c + i}"
        round_lock = f"lk{i}"
        for idx, v in enumerate(vertices, start=1):
            acquires = [write(main, _edge_lock(v, u)) for u in neighbours[v]]
            releases = [read(main, _edge_lock(v, u)) for u in reversed(neighbours[v])]
            ev += acquires
            if idx == 1:
                ev.append(write(main, f"s{i}"))
            else:
                ev.append(write(main, f"y{i}"))
                # close the previous auxiliary round: read back y, release
                ev += [read(aux, f"y{i}"), read(aux, round_lock)]
            if idx < n:
                # open the next auxiliary round before the main thread reads z
                ev += [write(aux, round_lock), write(aux, f"z{i}")]
                ev.append(read(main, f"z{i}"))
            else:
                ev.append(read(main, "x"))
            ev += releases

    ev += [read(reader, f"s{i}") for i in range(1, c + 1)]
    ev += [write(reader, f"lk{i}") for i in range(1, c + 1)]
    ev.append(read(reader, "x"))
    ev += [read(reader, f"lk{i}") for i in range(c, 0, -1)]
    return Trace(tuple(ev))
