"""Finite automata over event labels, and builders for bug specifications.

NFAs and DFAs share an explicit, finite, ordered alphabet of event
labels; every monitor needs a closed alphabet so that "any event"
self-loops can be expanded.  State sets are manipulated as bitmasks.

Builders cover the usual regular bug specifications: data races
(conflicting accesses by different threads appearing consecutively),
order violations (a forbidden "beta before alpha" ordering), serial
transaction runs, and scattered patterns.

The textual NFA format is JSON::

    {
      "alphabet": ["T1 w x", "T2 r x", "T1 b"],
      "states": 3,
      "initial": [0],
      "accepting": [2],
      "transitions": [[0, "*", 0], [0, "T1 w x", 1], [1, "T2 r x", 2], [2, "*", 2]]
    }

A transition label of ``"*"`` expands to every alphabet label at load
time.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

from .traces import BEGIN, END, Event, Trace, _parse_event_tokens


@dataclass(frozen=True)
class Alphabet:
    """Finite ordered set of event labels with stable indexing."""

    labels: tuple[Event, ...]

    def __post_init__(self) -> None:
        if not self.labels:
            raise ValueError("alphabet must be non-empty")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("alphabet contains duplicate labels")

    @cached_property
    def index(self) -> dict[Event, int]:
        return {lbl: i for i, lbl in enumerate(self.labels)}

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def index_of(self, label: Event) -> int:
        idx = self.index.get(label)
        if idx is None:
            raise ValueError(f"label not in alphabet: {label}")
        return idx

    def threads(self) -> list[str]:
        seen: dict[str, None] = {}
        for lbl in self.labels:
            seen.setdefault(lbl.thread, None)
        return list(seen)

    def locations(self) -> list[str]:
        seen: dict[str, None] = {}
        for lbl in self.labels:
            if lbl.loc is not None:
                seen.setdefault(lbl.loc, None)
        return list(seen)


def alphabet_of(*traces: Trace, extra: tuple[Event, ...] = (), transactions: bool = False) -> Alphabet:
    """Alphabet spanning the given traces plus any extra labels.

    With ``transactions`` set, begin/end labels for every observed
    thread are included.
    """
    labels = {e for t in traces for e in t.events}
    labels.update(extra)
    if transactions:
        threads = {lbl.thread for lbl in labels}
        for t in sorted(threads):
            labels.add(Event(t, BEGIN))
            labels.add(Event(t, END))
    return Alphabet(tuple(sorted(labels, key=Event.sort_key)))


@dataclass(frozen=True)
class Nfa:
    alphabet: Alphabet
    n_states: int
    initial: frozenset[int]
    accepting: frozenset[int]
    transitions: tuple[tuple[int, Event, int], ...]

    def __post_init__(self) -> None:
        for s in self.initial | self.accepting:
            if not 0 <= s < self.n_states:
                raise ValueError(f"state {s} out of range")
        for src, lbl, dst in self.transitions:
            if not (0 <= src < self.n_states and 0 <= dst < self.n_states):
                raise ValueError(f"transition ({src}, {lbl}, {dst}) out of range")
            self.alphabet.index_of(lbl)

    @cached_property
    def _step_masks(self) -> list[list[int]]:
        # per label index, per source state: bitmask of successors
        table = [[0] * self.n_states for _ in self.alphabet.labels]
        for src, lbl, dst in self.transitions:
            table[self.alphabet.index_of(lbl)][src] |= 1 << dst
        return table

    @cached_property
    def initial_mask(self) -> int:
        return sum(1 << s for s in self.initial)

    @cached_property
    def accepting_mask(self) -> int:
        return sum(1 << s for s in self.accepting)

    def step_mask(self, mask: int, label_idx: int) -> int:
        row = self._step_masks[label_idx]
        out = 0
        while mask:
            low = mask & -mask
            out |= row[low.bit_length() - 1]
            mask ^= low
        return out

    def accepts(self, t: Trace) -> bool:
        mask = self.initial_mask
        for e in t:
            mask = self.step_mask(mask, self.alphabet.index_of(e))
            if not mask:
                return False
        return bool(mask & self.accepting_mask)


@dataclass(frozen=True)
class Dfa:
    """Deterministic automaton with a total transition function."""

    alphabet: Alphabet
    n_states: int
    initial: int
    accepting: frozenset[int]
    delta: tuple[tuple[int, ...], ...]  # delta[state][label_idx]

    def __post_init__(self) -> None:
        if len(self.delta) != self.n_states:
            raise ValueError("delta must have one row per state")
        for row in self.delta:
            if len(row) != len(self.alphabet):
                raise ValueError("delta rows must cover the whole alphabet")

    def step(self, state: int, label_idx: int) -> int:
        return self.delta[state][label_idx]

    def accepts(self, t: Trace) -> bool:
        state = self.initial
        for e in t:
            state = self.delta[state][self.alphabet.index_of(e)]
        return state in self.accepting


def accepts(automaton: Nfa | Dfa, t: Trace) -> bool:
    return automaton.accepts(t)


def determinize(nfa: Nfa) -> Dfa:
    """Subset construction; only reachable subsets are materialized and a
    sink is added implicitly via the empty subset."""
    n_labels = len(nfa.alphabet)
    start = nfa.initial_mask
    numbering: dict[int, int] = {start: 0}
    order = [start]
    delta_rows: list[list[int]] = []
    i = 0
    while i < len(order):
        mask = order[i]
        row = []
        for lbl in range(n_labels):
            succ = nfa.step_mask(mask, lbl)
            if succ not in numbering:
                numbering[succ] = len(order)
                order.append(succ)
            row.append(numbering[succ])
        delta_rows.append(row)
        i += 1
    accepting = frozenset(
        numbering[mask] for mask in order if mask & nfa.accepting_mask
    )
    return Dfa(
        alphabet=nfa.alphabet,
        n_states=len(order),
        initial=0,
        accepting=accepting,
        delta=tuple(tuple(row) for row in delta_rows),
    )


def _conflicting(a: Event, b: Event) -> bool:
    return (
        a.loc is not None
        and a.loc == b.loc
        and a.thread != b.thread
        and not (a.is_read and b.is_read)
    )


def spec_race(alphabet: Alphabet) -> Nfa:
    """Conflicting accesses by different threads appearing consecutively.

    One waiting state per located label; begin/end labels never form
    the conflicting pair.
    """
    located = [lbl for lbl in alphabet if lbl.loc is not None]
    wait = {lbl: i + 1 for i, lbl in enumerate(located)}
    acc = len(located) + 1
    transitions = [(0, lbl, 0) for lbl in alphabet]
    transitions += [(acc, lbl, acc) for lbl in alphabet]
    for a in located:
        transitions.append((0, a, wait[a]))
        for b in located:
            if _conflicting(a, b):
                transitions.append((wait[a], b, acc))
    return Nfa(
        alphabet=alphabet,
        n_states=acc + 1,
        initial=frozenset({0}),
        accepting=frozenset({acc}),
        transitions=tuple(transitions),
    )


def spec_order_violation(alpha: Event, beta: Event, alphabet: Alphabet) -> Nfa:
    """Runs in which ``beta`` occurs (anywhere) before ``alpha``."""
    alphabet.index_of(alpha)
    alphabet.index_of(beta)
    transitions = [(s, lbl, s) for s in (0, 1, 2) for lbl in alphabet]
    transitions += [(0, beta, 1), (1, alpha, 2)]
    return Nfa(
        alphabet=alphabet,
        n_states=3,
        initial=frozenset({0}),
        accepting=frozenset({2}),
        transitions=tuple(transitions),
    )


def spec_serial(alphabet: Alphabet) -> Nfa:
    """Runs that are sequences of uninterrupted transactions.

    Every thread of the alphabet must come with begin and end labels.
    """
    threads = alphabet.threads()
    labels = set(alphabet.labels)
    for t in threads:
        if Event(t, BEGIN) not in labels or Event(t, END) not in labels:
            raise ValueError(f"alphabet lacks begin/end labels for thread {t}")
    state_of = {t: i + 1 for i, t in enumerate(threads)}
    transitions = []
    for t in threads:
        s = state_of[t]
        transitions.append((0, Event(t, BEGIN), s))
        transitions.append((s, Event(t, END), 0))
        for lbl in alphabet:
            if lbl.thread == t and lbl.loc is not None:
                transitions.append((s, lbl, s))
    return Nfa(
        alphabet=alphabet,
        n_states=len(threads) + 1,
        initial=frozenset({0}),
        accepting=frozenset({0}),
        transitions=tuple(transitions),
    )


def spec_pattern(seq: list[Event] | tuple[Event, ...], alphabet: Alphabet) -> Nfa:
    """Scattered occurrence of the given labels in order."""
    if not seq:
        raise ValueError("pattern must name at least one label")
    for lbl in seq:
        alphabet.index_of(lbl)
    d = len(seq)
    transitions = [(s, lbl, s) for s in range(d + 1) for lbl in alphabet]
    transitions += [(i, seq[i], i + 1) for i in range(d)]
    return Nfa(
        alphabet=alphabet,
        n_states=d + 1,
        initial=frozenset({0}),
        accepting=frozenset({d}),
        transitions=tuple(transitions),
    )


def load_nfa(source: str | Path) -> Nfa:
    """Load an NFA from the JSON format (path or literal JSON text)."""
    if isinstance(source, Path):
        text = source.read_text()
    else:
        text = source
        candidate = Path(source)
        try:
            if candidate.is_file():
                text = candidate.read_text()
        except OSError:
            pass
    data = json.loads(text)
    for field in ("alphabet", "states", "initial", "accepting", "transitions"):
        if field not in data:
            raise ValueError(f"NFA file missing field {field!r}")
    labels = tuple(
        _parse_event_tokens(entry.split(), line_no)
        for line_no, entry in enumerate(data["alphabet"], start=1)
    )
    alphabet = Alphabet(labels)
    transitions = []
    for src, lbl, dst in data["transitions"]:
        if lbl == "*":
            transitions += [(src, label, dst) for label in labels]
        else:
            transitions.append((src, _parse_event_tokens(lbl.split(), 0), dst))
    return Nfa(
        alphabet=alphabet,
        n_states=int(data["states"]),
        initial=frozenset(int(s) for s in data["initial"]),
        accepting=frozenset(int(s) for s in data["accepting"]),
        transitions=tuple(transitions),
    )
