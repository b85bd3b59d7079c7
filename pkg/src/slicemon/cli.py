"""Command-line front end.

Every subcommand prints a single JSON object on stdout.  Exit codes:
0 success, 2 usage error, 3 parse error, 4 oracle bound exceeded.
Diagnostics go to stderr.

Specification selectors (``--spec``):

* ``race``
* ``ov:ALPHA,BETA`` with events written as in trace files, e.g.
  ``ov:T2 r x,T1 w y`` (accepts runs where BETA occurs before ALPHA)
* ``serial``
* ``pattern:EV1,EV2,...``
* anything else is read as a path to an NFA JSON file
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
import time

from . import generators, oracle
from .automata import Alphabet, Nfa, alphabet_of, load_nfa, spec_order_violation, spec_pattern, spec_race, spec_serial
from .frontier import frontier_post, frontier_pre
from .kmaz import kmaz_monitor_run
from .preimage import PreimageMonitor
from .relations import drop_count, rf_equivalent, slice_height, swap_distance, trace_equivalent
from .traces import Trace, TraceParseError, format_trace, parse_trace

USAGE_ERROR = 2
PARSE_ERROR = 3
BOUND_ERROR = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read_trace(path: str) -> Trace:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_trace(fh.read())
    except FileNotFoundError:
        raise CliError(f"no such trace file: {path}", PARSE_ERROR) from None
    except TraceParseError as exc:
        raise CliError(f"{path}: {exc}", PARSE_ERROR) from None


def _parse_event(text: str):
    from .traces import _parse_event_tokens

    try:
        return _parse_event_tokens(text.strip().split(), 0)
    except TraceParseError as exc:
        raise CliError(f"bad event {text!r}: {exc}", USAGE_ERROR) from None


def _build_spec(selector: str, t: Trace) -> Nfa:
    """Instantiate a built-in spec over the trace's alphabet (plus any
    labels the selector itself names), or load an NFA file."""
    if selector == "race":
        return spec_race(alphabet_of(t))
    if selector.startswith("ov:"):
        parts = selector[3:].split(",")
        if len(parts) != 2:
            raise CliError("expected ov:ALPHA,BETA", USAGE_ERROR)
        alpha, beta = (_parse_event(p) for p in parts)
        return spec_order_violation(alpha, beta, alphabet_of(t, extra=(alpha, beta)))
    if selector == "serial":
        return spec_serial(alphabet_of(t, transactions=True))
    if selector.startswith("pattern:"):
        seq = [_parse_event(p) for p in selector[8:].split(",") if p.strip()]
        if not seq:
            raise CliError("pattern needs at least one event", USAGE_ERROR)
        return spec_pattern(seq, alphabet_of(t, extra=tuple(seq)))
    try:
        nfa = load_nfa(selector)
    except FileNotFoundError:
        raise CliError(f"no such spec: {selector}", PARSE_ERROR) from None
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        raise CliError(f"bad NFA file {selector}: {exc}", PARSE_ERROR) from None
    missing = [str(e) for e in t.events if e not in nfa.alphabet.index]
    if missing:
        raise CliError(f"trace labels outside NFA alphabet: {missing[0]}", PARSE_ERROR)
    return nfa


def _jsonable(value):
    if value is math.inf:
        return None
    return value


def _cmd_height(args) -> dict:
    a, b = _read_trace(args.trace_a), _read_trace(args.trace_b)
    return {
        "rf_equivalent": rf_equivalent(a, b),
        "drop_count": _jsonable(drop_count(a, b)),
        "slice_height": _jsonable(slice_height(a, b)),
    }


def _cmd_compare(args) -> dict:
    a, b = _read_trace(args.trace_a), _read_trace(args.trace_b)
    return {
        "rf_equivalent": rf_equivalent(a, b),
        "trace_equivalent": trace_equivalent(a, b),
        "swap_distance": _jsonable(swap_distance(a, b)),
        "drop_count_ab": _jsonable(drop_count(a, b)),
        "drop_count_ba": _jsonable(drop_count(b, a)),
    }


def _cmd_monitor(args) -> dict:
    t = _read_trace(args.trace)
    monitor = PreimageMonitor(_build_spec(args.spec, t), args.k)
    verdict = monitor.run(t)
    return {"verdict": verdict, "max_states": monitor.max_states, "steps": monitor.steps}


def _cmd_kmaz_monitor(args) -> dict:
    from .automata import determinize

    t = _read_trace(args.trace)
    dfa = determinize(_build_spec(args.spec, t))
    return {"verdict": kmaz_monitor_run(t, dfa, args.k)}


def _cmd_frontier(args, forward: bool) -> dict:
    t = _read_trace(args.trace)
    search = frontier_pre if forward else frontier_post
    result = search(t, _build_spec(args.spec, t), args.k)
    out = {"verdict": result.verdict, "nodes_explored": result.nodes_explored}
    if result.witness is not None:
        out["witness"] = format_trace(result.witness)
    return out


def _cmd_oracle(args, forward: bool) -> dict:
    t = _read_trace(args.trace)
    spec = _build_spec(args.spec, t)
    fn = oracle.oracle_pre if forward else oracle.oracle_post
    return {"verdict": fn(t, spec, args.k, bound=args.bound)}


def _cmd_oracle_kmaz(args) -> dict:
    t = _read_trace(args.trace)
    spec = _build_spec(args.spec, t)
    ball = oracle.swap_ball(t, args.k, bound=args.bound)
    return {"verdict": any(spec.accepts(r) for r in ball), "ball_size": len(ball)}


def _cmd_slice_star(args) -> dict:
    a, b = _read_trace(args.trace_a), _read_trace(args.trace_b)
    reachable = oracle.repeated_slice_reachable(a, b, args.max_steps, bound=args.bound)
    return {"reachable": reachable}


def _cmd_gen(args) -> dict:
    if args.family == "seqint":
        seq, inter = generators.sequential_interleaved_pair(args.k)
        traces = {"seq": seq, "int": inter}
    elif args.family == "nontrans":
        s, r, g = generators.nontransitive_triple(args.k)
        traces = {"first": s, "second": r, "third": g}
    elif args.family == "slicestar":
        if not args.word:
            raise CliError("slicestar needs --word BITS#BITS", USAGE_ERROR)
        try:
            traces = {"trace": generators.bitstring_equality_trace(args.word)}
        except ValueError as exc:
            raise CliError(str(exc), USAGE_ERROR) from None
    elif args.family == "indepset":
        if not args.graph:
            raise CliError("indepset needs --graph EDGES (e.g. '1-2,2-3')", USAGE_ERROR)
        adjacency: dict[int, list[int]] = {}
        for v in (args.vertices or "").split(","):
            if v.strip():
                adjacency.setdefault(int(v), [])
        for chunk in args.graph.split(","):
            if not chunk.strip():
                continue
            u, _, v = chunk.partition("-")
            try:
                ui, vi = int(u), int(v)
            except ValueError:
                raise CliError(f"bad edge {chunk!r}", USAGE_ERROR) from None
            adjacency.setdefault(ui, []).append(vi)
            adjacency.setdefault(vi, []).append(ui)
        try:
            traces = {"trace": generators.independent_set_trace(adjacency, args.c)}
        except ValueError as exc:
            raise CliError(str(exc), USAGE_ERROR) from None
    else:
        raise CliError(f"unknown family {args.family!r}", USAGE_ERROR)
    return {"family": args.family, "traces": {name: format_trace(t) for name, t in traces.items()}}


def _cmd_bench(args) -> dict:
    pattern = _read_trace(args.pattern)
    repeated = Trace(pattern.events * args.reps)
    alphabet_source = pattern if len(pattern) else repeated
    monitor = PreimageMonitor(_build_spec(args.spec, alphabet_source), args.k)
    start = time.perf_counter()
    verdict = monitor.run(repeated)
    elapsed = time.perf_counter() - start
    return {
        "verdict": verdict,
        "max_states": monitor.max_states,
        "steps": monitor.steps,
        "seconds": elapsed,
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slicemon",
        description="Predictive monitoring of concurrent traces under bounded slice reorderings",
    )
    parser.add_argument("--seed", type=int, default=None, help="seed for randomized runs")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kwargs):
        return sub.add_parser(name, **kwargs)

    p = add("height", help="drop count and slice height of a pair of traces")
    p.add_argument("trace_a")
    p.add_argument("trace_b")

    p = add("compare", help="all pairwise relation measures for a pair of traces")
    p.add_argument("trace_a")
    p.add_argument("trace_b")

    for name, help_text in [
        ("monitor", "streaming slice-bounded pre-image membership"),
        ("kmaz-monitor", "membership within k adjacent independent swaps"),
        ("frontier-pre", "offline pre-image search with witness"),
        ("frontier-post", "offline post-image search with witness"),
        ("oracle-pre", "brute-force pre-image membership"),
        ("oracle-post", "brute-force post-image membership"),
        ("oracle-kmaz", "brute-force swap-ball membership"),
    ]:
        p = add(name, help=help_text)
        p.add_argument("trace")
        p.add_argument("--spec", required=True)
        p.add_argument("--k", type=int, required=True)
        if name.startswith("oracle"):
            p.add_argument("--bound", type=int, default=oracle.DEFAULT_BOUND)

    p = add("slice-star", help="bounded search for repeated single-cut reordering")
    p.add_argument("trace_a")
    p.add_argument("trace_b")
    p.add_argument("--max-steps", type=int, required=True)
    p.add_argument("--bound", type=int, default=oracle.DEFAULT_BOUND)

    p = add("gen", help="emit a witness trace family")
    p.add_argument("--family", required=True, choices=["seqint", "nontrans", "slicestar", "indepset"])
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--word", help="BITS#BITS for the slicestar family")
    p.add_argument("--graph", help="edge list u-v,... for the indepset family")
    p.add_argument("--vertices", help="extra isolated vertices for the indepset family")
    p.add_argument("--c", type=int, default=1, help="independent-set size parameter")

    p = add("bench", help="repeat a pattern and measure the streaming monitor")
    p.add_argument("pattern")
    p.add_argument("--spec", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--reps", type=int, required=True)

    return parser


_COMMANDS = {
    "height": _cmd_height,
    "compare": _cmd_compare,
    "monitor": _cmd_monitor,
    "kmaz-monitor": _cmd_kmaz_monitor,
    "frontier-pre": lambda a: _cmd_frontier(a, forward=True),
    "frontier-post": lambda a: _cmd_frontier(a, forward=False),
    "oracle-pre": lambda a: _cmd_oracle(a, forward=True),
    "oracle-post": lambda a: _cmd_oracle(a, forward=False),
    "oracle-kmaz": _cmd_oracle_kmaz,
    "slice-star": _cmd_slice_star,
    "gen": _cmd_gen,
    "bench": _cmd_bench,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seed is not None:
        random.seed(args.seed)
    try:
        result = _COMMANDS[args.command](args)
    except CliError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code
    except oracle.BoundExceededError as exc:
        print(str(exc), file=sys.stderr)
        return BOUND_ERROR
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return USAGE_ERROR
    json.dump(result, sys.stdout)
    print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
