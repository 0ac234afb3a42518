"""
Numerical semigroups and progression conductors
===============================================

Members, period, and the least start of an arithmetic progression inside a
finitely generated semigroup.
"""

from rainbow_spectra.semigroup import (
    NumericalSemigroup,
    frobenius_pair,
    members_up_to,
    period,
    progression_conductor,
    scaled_progression,
)

# The semigroup generated by 3 and 5 misses only 1, 2, 4 and 7
A = NumericalSemigroup([3, 5])
print("<3, 5> up to 15:", members_up_to(A, 15))
print("largest gap:", frobenius_pair(3, 5))

# A semigroup with period 2: every member is even
B = NumericalSemigroup([14, 38, 108])
print("period of <14, 38, 108>:", period(B))
print("members up to 110:", members_up_to(B, 110))

# From 216 on, every even number is a member, and 214 is not
N = progression_conductor(B, 2)
print("progression with step 2 starts at", N)

# The same bound from the two smaller generators alone: 2 * (7 - 1) * (19 - 1)
print("scaled bound for <2*7, 2*19>:", scaled_progression(2, 7, 19))
