"""Traces, reads-from, and the slice height of a reordering.

A trace records one interleaved execution of a concurrent program.  Two
traces are interchangeable for bug-finding purposes when they keep each
thread's order and every read still sees the same write.  The cheapest
certificate that one trace can be rearranged into another is a slicing:
cut the original into a few subsequences and glue them back in order.
This script walks through the basic vocabulary.
"""

from slicemon import (
    drop_count,
    format_trace,
    nontransitive_triple,
    parse_trace,
    reads_from,
    rf_equivalent,
    sequential_interleaved_pair,
    slice_height,
)

# ---------------------------------------------------------------------------
# A three-event trace and one sound reordering of it
# ---------------------------------------------------------------------------

sigma = parse_trace("""
T1 w x
T2 r x
T1 w y
""")
rho = parse_trace("""
T1 w x
T1 w y
T2 r x
""")

print("sigma:")
print(format_trace(sigma))
print("reads-from of sigma:", reads_from(sigma))
print("rho is a sound reordering:", rf_equivalent(sigma, rho))
print("cuts needed to turn sigma into rho:", slice_height(sigma, rho))

bad = parse_trace("T2 r x\nT1 w x\nT1 w y")
print("moving the read first would orphan it:", rf_equivalent(sigma, bad))
print("so its slice height is:", slice_height(sigma, bad))
print()

# ---------------------------------------------------------------------------
# The cut budget is a real hierarchy: each extra cut buys strictly more
# ---------------------------------------------------------------------------

for k in range(1, 5):
    seq, inter = sequential_interleaved_pair(k)
    print(
        f"k={k}: sequential -> round-robin needs {drop_count(seq, inter)} cuts, "
        f"round-robin -> sequential needs {drop_count(inter, seq)}"
    )
print()

# ---------------------------------------------------------------------------
# Budgets do not add up: two k-cut moves can need 2k cuts in one shot
# ---------------------------------------------------------------------------

first, second, third = nontransitive_triple(2)
print("first -> second:", drop_count(first, second), "cuts")
print("second -> third:", drop_count(second, third), "cuts")
print("first -> third: ", drop_count(first, third), "cuts in a single move")
