"""
Guaranteed members of a rainbow spectrum
========================================

Starting from a single length n, close {2, n} under the derivation rules and
read off the periodic tail.
"""

from rainbow_spectra.spectrum import (
    difference_gcd,
    implied_members,
    main_theorem_bound,
    period_class,
    verify_progression,
)

# n = 6 gives every length that is 2 mod 4
facts = implied_members(6, 40)
print("n=6:", facts.derived)

# Each member carries the rule that produced it, so the derivation can be audited
for entry in facts.trace[:5]:
    print("  ", entry)

# The tail is periodic with the step predicted by n mod 4
for n in (7, 12, 16, 18):
    p, N = main_theorem_bound(n)
    ok, missing = verify_progression(n, p, N, 4 * N)
    g = difference_gcd(implied_members(n, 4 * N).derived)
    print(f"n={n}: step {period_class(n)}, start {N}, progression holds: {ok}, gcd of differences {g}")

# Using only the monoid operation, n generates a single arithmetic progression
print("R1 only, n=9:", implied_members(9, 40, rules=("R1",)).derived)
