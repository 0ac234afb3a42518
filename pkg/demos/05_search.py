"""
Depth-first search for witness cycles
=====================================

When the deterministic recipe does not apply, search over orderings of the
step multiset. An exhaustive run that finds nothing proves nonexistence.
"""

import time

from rainbow_spectra.search import (
    X_SET,
    backtrack_search,
    div4_family,
    div4_multiset,
    format_compact,
    verify_cycle,
)

# n = 16: no ordering of {15 x 8, 13 x 2, 1 x 6} works on M = 38
fam = div4_family(4)
res = backtrack_search(fam.M, div4_multiset(4), fam, exhaustive=True)
print(f"n=16 exhaustive: {res.status} after {res.nodes} nodes")

# For k outside X, a budgeted greedy search fills the gaps
t = time.perf_counter()
for k in [k for k in range(5, 35) if k not in X_SET and k not in (22, 25)][:8]:
    fam = div4_family(k)
    res = backtrack_search(fam.M, div4_multiset(k), fam)
    ok = res.status == "found" and verify_cycle(fam.M, res.steps, 4 * k, fam).valid
    print(f"k={k:2d} M={fam.M:3d} nodes={res.nodes:8d} valid={ok}")
print(f"{time.perf_counter() - t:.2f} s")

fam = div4_family(5)
res = backtrack_search(fam.M, div4_multiset(5), fam)
print("k=5:", format_compact(res.steps, fam.M))
