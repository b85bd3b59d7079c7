"""Predictive monitoring of concurrent traces under bounded slice reorderings.

A recorded run of a concurrent program can often be reordered, without
re-executing anything, into a run that exposes a bug, as long as the
reordering preserves each thread's order and every read's source write.
This library decides whether such a reordering exists when the
reordering is additionally restricted to gluing together at most k+1
slices of the original run, and monitors regular bug specifications
under that restriction in constant space.
"""

from .automata import (
    Alphabet,
    Dfa,
    Nfa,
    accepts,
    alphabet_of,
    determinize,
    load_nfa,
    spec_order_violation,
    spec_pattern,
    spec_race,
    spec_serial,
)
from .frontier import FrontierResult, frontier_post, frontier_pre
from .generators import (
    bitstring_equality_trace,
    independent_set_trace,
    nontransitive_triple,
    sequential_interleaved_pair,
)
from .kmaz import build_kmaz_nfa, kmaz_monitor_run
from .oracle import (
    BoundExceededError,
    annotation_consistent_concat,
    annotation_consistent_pairwise,
    enumerate_rf_reorderings,
    oracle_post,
    oracle_pre,
    repeated_slice_reachable,
    swap_ball,
)
from .preimage import (
    CONSISTENCY_START,
    ConsistencyState,
    PreimageMonitor,
    consistency_step,
    monitor_run,
    slice_table_accepting,
    slice_table_initial,
    slice_table_step,
)
from .relations import (
    drop_count,
    independent,
    is_k_maz,
    is_k_slice,
    permutation_of,
    rf_equivalent,
    slice_height,
    swap_distance,
    trace_equivalent,
)
from .traces import (
    AnnotatedTrace,
    Event,
    Trace,
    TraceParseError,
    begin,
    end,
    format_annotated_trace,
    format_trace,
    parse_annotated_trace,
    parse_trace,
    po_predecessor,
    read,
    reads_from,
    trace,
    write,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "AnnotatedTrace",
    "BoundExceededError",
    "CONSISTENCY_START",
    "ConsistencyState",
    "Dfa",
    "Event",
    "FrontierResult",
    "Nfa",
    "PreimageMonitor",
    "Trace",
    "TraceParseError",
    "accepts",
    "alphabet_of",
    "annotation_consistent_concat",
    "annotation_consistent_pairwise",
    "begin",
    "bitstring_equality_trace",
    "build_kmaz_nfa",
    "consistency_step",
    "determinize",
    "drop_count",
    "end",
    "enumerate_rf_reorderings",
    "format_annotated_trace",
    "format_trace",
    "frontier_post",
    "frontier_pre",
    "independent",
    "independent_set_trace",
    "is_k_maz",
    "is_k_slice",
    "kmaz_monitor_run",
    "load_nfa",
    "monitor_run",
    "nontransitive_triple",
    "oracle_post",
    "oracle_pre",
    "parse_annotated_trace",
    "parse_trace",
    "permutation_of",
    "po_predecessor",
    "read",
    "reads_from",
    "repeated_slice_reachable",
    "rf_equivalent",
    "sequential_interleaved_pair",
    "slice_height",
    "slice_table_accepting",
    "slice_table_initial",
    "slice_table_step",
    "spec_order_violation",
    "spec_pattern",
    "spec_race",
    "spec_serial",
    "swap_ball",
    "swap_distance",
    "trace",
    "trace_equivalent",
    "write",
]
