"""Event and trace data model for concurrent program runs.

A run (or trace) is a finite sequence of events, each performed by some
thread.  Read and write events name the memory location they touch;
transaction begin/end events carry no location.  Positions are 1-based
throughout the library so that permutation and reads-from bookkeeping
lines up with the usual {1..n} indexing.

The on-disk format is line oriented (UTF-8, LF or CRLF), one event per
line::

    # comment
    T1 w x        write to x by thread T1
    T2 r x        read of x by thread T2
    T1 b          transaction begin (no location)
    T1 e          transaction end

Annotated traces append a slice field ``@N`` (N >= 1) to each event line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

READ = "r"
WRITE = "w"
BEGIN = "b"
END = "e"

OPS = frozenset((READ, WRITE, BEGIN, END))
LOCATED_OPS = frozenset((READ, WRITE))

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

# stable ordering used when alphabets are built from label sets
_OP_ORDER = {READ: 0, WRITE: 1, BEGIN: 2, END: 3}


class TraceParseError(ValueError):
    """Raised on malformed trace text; carries the offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Event:
    """A single step of a run: ``(thread, op, loc)`` with op one of r/w/b/e.

    ``loc`` is present exactly when the operation is a read or a write.
    """

    thread: str
    op: str
    loc: str | None = None

    def __post_init__(self) -> None:
        if self.op not in OPS:
            raise ValueError(f"unknown op {self.op!r}")
        if not _IDENT_RE.match(self.thread):
            raise ValueError(f"bad thread identifier {self.thread!r}")
        if self.op in LOCATED_OPS:
            if self.loc is None:
                raise ValueError(f"op {self.op!r} requires a location")
            if not _IDENT_RE.match(self.loc):
                raise ValueError(f"bad location identifier {self.loc!r}")
        elif self.loc is not None:
            raise ValueError(f"op {self.op!r} must not carry a location")

    @property
    def is_read(self) -> bool:
        return self.op == READ

    @property
    def is_write(self) -> bool:
        return self.op == WRITE

    def sort_key(self) -> tuple:
        return (self.thread, _OP_ORDER[self.op], self.loc or "")

    def __str__(self) -> str:
        if self.loc is None:
            return f"{self.thread} {self.op}"
        return f"{self.thread} {self.op} {self.loc}"


def read(thread: str, loc: str) -> Event:
    return Event(thread, READ, loc)


def write(thread: str, loc: str) -> Event:
    return Event(thread, WRITE, loc)


def begin(thread: str) -> Event:
    return Event(thread, BEGIN)


def end(thread: str) -> Event:
    return Event(thread, END)


@dataclass(frozen=True)
class Trace:
    """An immutable sequence of events, positions 1..n."""

    events: tuple[Event, ...] = ()

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self) -> Iterator[Event]:
        return iter(self.events)

    def at(self, pos: int) -> Event:
        """Event at 1-based position ``pos``."""
        if not 1 <= pos <= len(self.events):
            raise IndexError(f"position {pos} out of range 1..{len(self.events)}")
        return self.events[pos - 1]

    def threads(self) -> list[str]:
        """Thread identifiers in order of first appearance."""
        seen: dict[str, None] = {}
        for e in self.events:
            seen.setdefault(e.thread, None)
        return list(seen)

    def locations(self) -> list[str]:
        seen: dict[str, None] = {}
        for e in self.events:
            if e.loc is not None:
                seen.setdefault(e.loc, None)
        return list(seen)

    def positions_by_thread(self) -> dict[str, list[int]]:
        """1-based positions of each thread's events, in program order."""
        out: dict[str, list[int]] = {}
        for pos, e in enumerate(self.events, start=1):
            out.setdefault(e.thread, []).append(pos)
        return out


def trace(*events: Event) -> Trace:
    return Trace(tuple(events))


def _parse_event_tokens(tokens: list[str], line_no: int) -> Event:
    if len(tokens) < 2:
        raise TraceParseError("expected 'THREAD OP [LOC]'", line_no)
    thread, op = tokens[0], tokens[1]
    if op not in OPS:
        raise TraceParseError(f"unknown op {op!r} (expected r/w/b/e)", line_no)
    if op in LOCATED_OPS:
        if len(tokens) != 3:
            raise TraceParseError(f"op {op!r} requires a location", line_no)
        loc = tokens[2]
    else:
        if len(tokens) != 2:
            raise TraceParseError(f"op {op!r} must not carry a location", line_no)
        loc = None
    try:
        return Event(thread, op, loc)
    except ValueError as exc:
        raise TraceParseError(str(exc), line_no) from None


def parse_trace(text: str) -> Trace:
    """Parse the line-oriented trace format; round-trips with format_trace."""
    events = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        events.append(_parse_event_tokens(line.split(), line_no))
    return Trace(tuple(events))


def format_trace(t: Trace) -> str:
    return "".join(f"{e}\n" for e in t)


def reads_from(t: Trace) -> dict[int, int]:
    """Last-write-before-read map (1-based positions); orphan reads absent."""
    rf: dict[int, int] = {}
    last_write: dict[str, int] = {}
    for pos, e in enumerate(t.events, start=1):
        if e.is_read:
            src = last_write.get(e.loc)
            if src is not None:
                rf[pos] = src
        elif e.is_write:
            last_write[e.loc] = pos
    return rf


def po_predecessor(t: Trace, pos: int) -> int | None:
    """Largest position before ``pos`` on the same thread, if any."""
    thread = t.at(pos).thread
    for prev in range(pos - 1, 0, -1):
        if t.events[prev - 1].thread == thread:
            return prev
    return None


@dataclass(frozen=True)
class AnnotatedTrace:
    """A trace whose events carry slice indices in 1..k+1."""

    events: tuple[tuple[Event, int], ...]
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be positive")
        for e, s in self.events:
            if not 1 <= s <= self.k + 1:
                raise ValueError(f"slice {s} for {e} outside 1..{self.k + 1}")

    def __len__(self) -> int:
        return len(self.events)

    def plain(self) -> Trace:
        """Erase the slice annotations."""
        return Trace(tuple(e for e, _ in self.events))

    def slices(self) -> tuple[int, ...]:
        return tuple(s for _, s in self.events)


def parse_annotated_trace(text: str, k: int) -> AnnotatedTrace:
    """Parse the annotated format: each event line ends with ``@N``."""
    events = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        slice_token = tokens[-1]
        if slice_token == "@" or not slice_token.startswith("@"):
            # allow a space between '@' and the integer
            if len(tokens) >= 2 and tokens[-2] == "@":
                slice_token = "@" + tokens[-1]
                tokens = tokens[:-2]
            else:
                raise TraceParseError("missing '@SLICE' annotation", line_no)
        else:
            tokens = tokens[:-1]
        try:
            s = int(slice_token[1:])
        except ValueError:
            raise TraceParseError(f"bad slice annotation {slice_token!r}", line_no) from None
        events.append((_parse_event_tokens(tokens, line_no), s))
    return AnnotatedTrace(tuple(events), k)


def format_annotated_trace(at: AnnotatedTrace) -> str:
    return "".join(f"{e} @{s}\n" for e, s in at.events)
