"""
Chord colors on a rainbow ambient cycle
=======================================

Suppose an M-cycle is rainbow with perimeter edge (i, i+1) colored i. Any
cycle whose length lies in the spectrum is non-rainbow, which pins down the
colors a chord can carry.
"""

from rainbow_spectra.gadget import Chord, ConstraintStore, forced_rainbow, propagate, walk_from_steps
from rainbow_spectra.lemmas import lemma_even_chain
from rainbow_spectra.search import construct_even

n = 14
M = 3 * n - 8

# The chord (0, n-1) closes the perimeter path 0 -> 1 -> ... -> n-1. That
# n-cycle must repeat a color, so the chord uses one of the path colors.
store = ConstraintStore.fresh(M)
path = walk_from_steps(M, 0, [1] * (n - 1) + [M - (n - 1)])
print("gamma(0, n-1) in", propagate(path, Chord(0, n - 1), store))

# Running the full chain of derivations narrows three chord lengths to arcs
chain = lemma_even_chain(n)
for fam in chain.families:
    print(f"length {fam.length}: chord at base i may use colors i+{fam.offset} .. i+{fam.offset + fam.width - 1}",
          "(all bases agree)" if not chain.mismatches(fam) else "(MISMATCH)")
print(len(chain.steps), "checked derivation steps")

# A cycle whose edges have pairwise disjoint color sets is forced to be rainbow.
# This n-cycle goes twice around the ambient cycle.
walk = walk_from_steps(M, 0, construct_even(n)[1])
print("walk length", len(walk), "steps sum to", sum(walk.steps), "= 2M")
for e in walk.edges()[:4]:
    print("  ", e, chain.store.allowed(e))
print("forced rainbow?", bool(forced_rainbow(walk, chain.store)))

# Without the derived families the same walk could repeat a color
print("forced rainbow with no information?", bool(forced_rainbow(walk, store)))
