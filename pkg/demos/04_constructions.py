"""
Deterministic witness cycles
============================

Closed walks that are forced rainbow under the derived chord families. Their
existence contradicts the assumed rainbow ambient cycle.
"""

from rainbow_spectra.search import (
    X_SET,
    InequalityFailed,
    check_inequalities_div4,
    construct_div4,
    construct_even,
    even_family,
    format_compact,
    verify_cycle,
)

# Even n: two revolutions around M = 3n - 8
for n in (12, 14, 16, 30):
    trace, steps = construct_even(n)
    M = 3 * n - 8
    cert = verify_cycle(M, steps, n, even_family(n))
    print(f"n={n} d={trace.d} valid={cert.valid}: {format_compact(steps, M)}")

# n = 4k: four revolutions, available when the inequalities x1..x4 all hold
print("k values in 5..34 where x1..x4 hold:", sorted(k for k in range(5, 35) if all(check_inequalities_div4(k).values())))
print("matches X:", X_SET == {k for k in range(5, 35) if all(check_inequalities_div4(k).values())})

trace, steps = construct_div4(11)
print(f"k=11: r={trace.r} d1={trace.d1} d2={trace.d2} round positions {trace.round_positions}")
print(format_compact(steps, trace.M))

# Outside X the recipe refuses rather than emitting an invalid cycle
try:
    construct_div4(12)
except InequalityFailed as exc:
    print("k=12:", exc)
