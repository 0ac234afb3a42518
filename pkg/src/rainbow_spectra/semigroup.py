"""Finitely generated numerical semigroups and monoids.

Membership is computed with an integer bitset (bit ``x`` set iff ``x`` is in
the semigroup), which keeps every operation exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd


class SemigroupError(ValueError):
    pass


class UndefinedPeriodError(SemigroupError):
    pass


class NoSuchProgressionError(SemigroupError):
    pass


class NotCoprimeError(SemigroupError):
    pass


@dataclass(frozen=True)
class NumericalSemigroup:
    """Subsemigroup of (N0, +) generated by ``generators``.

    With ``includes_zero`` the object is the monoid (empty sum allowed).
    An empty generator list is only accepted for the trivial monoid {0}.
    """

    generators: tuple[int, ...]
    includes_zero: bool = False

    def __init__(self, generators, includes_zero: bool = False):
        gens = tuple(sorted(set(int(g) for g in generators)))
        if any(g < 1 for g in gens):
            raise SemigroupError(f"generators must be positive, got {gens}")
        if not gens and not includes_zero:
            raise SemigroupError("a semigroup needs at least one generator")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "includes_zero", bool(includes_zero))

    def bitset(self, bound: int) -> int:
        """Bitset of the monoid closure on [0, bound] (bit 0 always set)."""
        mask = (1 << (bound + 1)) - 1
        bits = 1
        for g in self.generators:
            if g > bound:
                continue
            # saturate under +g by doubling: covers 0..(2^j - 1) multiples
            step = g
            while step <= bound:
                bits |= (bits << step) & mask
                step *= 2
        return bits

    def contains(self, x: int, bits: int | None = None) -> bool:
        if x == 0:
            return self.includes_zero
        if x < 0:
            return False
        if bits is None:
            bits = self.bitset(x)
        return bool(bits >> x & 1)

    @property
    def multiplicity(self) -> int:
        """Smallest positive element."""
        if not self.generators:
            raise UndefinedPeriodError("the trivial monoid {0} has no positive element")
        return self.generators[0]


def members_up_to(A: NumericalSemigroup, bound: int) -> list[int]:
    if bound < 1:
        raise SemigroupError("bound must be >= 1")
    bits = A.bitset(bound)
    out = [x for x in range(1, bound + 1) if bits >> x & 1]
    if A.includes_zero:
        out.insert(0, 0)
    return out


def period(A: NumericalSemigroup) -> int:
    """gcd of all differences of elements; equals gcd of the generators."""
    if not A.generators:
        raise UndefinedPeriodError("period of {0} is undefined")
    return reduce(gcd, A.generators)


def conductor_certificate(A: NumericalSemigroup) -> int:
    """Least c with every multiple of period(A) that is >= c lying in A.

    Certified by finding ``multiplicity / period`` consecutive multiples of
    the period inside A: adding the smallest generator then covers the rest.
    """
    g = period(A)
    m = A.multiplicity
    run_needed = m // g
    bound = max(4 * m, 64)
    while True:
        bits = A.bitset(bound)
        run = 0
        for x in range(0, bound + 1, g):
            if bits >> x & 1:
                run += 1
                if run == run_needed:
                    start = x - (run_needed - 1) * g
                    # walk back to the first member of the final run of multiples
                    while start - g >= 0 and bits >> (start - g) & 1:
                        start -= g
                    return start
            else:
                run = 0
        bound *= 2


def progression_conductor(A: NumericalSemigroup, p: int) -> int:
    """Least N >= 1 with {N + k*p : k >= 0} contained in A."""
    if p < 1:
        raise NoSuchProgressionError("step must be positive")
    g = period(A)
    if p % g:
        raise NoSuchProgressionError(f"step {p} is not a multiple of the period {g}")
    c = conductor_certificate(A)
    window = c + p
    bits = A.bitset(window)

    def inside(x: int) -> bool:
        if x >= c:
            return x % g == 0
        return bool(bits >> x & 1)

    for N in range(1, window + 1):
        if not inside(N):
            continue
        x = N
        while x < c and inside(x):
            x += p
        if x >= c:
            return N
    raise AssertionError("unreachable: c itself is a valid start")


def frobenius_pair(n: int, m: int) -> int:
    """Largest integer that is not a nonnegative combination of n and m."""
    if n < 2 or m < 2:
        raise SemigroupError("both generators must be >= 2")
    if gcd(n, m) != 1:
        raise NotCoprimeError(f"gcd({n}, {m}) != 1")
    f = n * m - n - m
    assert f + 1 <= (n - 1) * (m - 1)
    return f


def scaled_progression(p: int, n: int, m: int) -> tuple[int, int]:
    """(period divisor, N bound) for a semigroup containing p*n and p*m."""
    frobenius_pair(n, m)
    bound = p * (n - 1) * (m - 1)
    actual = progression_conductor(NumericalSemigroup([p * n, p * m]), p)
    if actual > bound:
        raise AssertionError(f"conductor {actual} exceeds bound {bound}")
    return p, bound


def prop_progression_start(n: int, m: int) -> int:
    """Start n^2 of the progression with step m - n inside <n, m>."""
    if not m > n >= 1:
        raise SemigroupError("need m > n >= 1")
    return n * n
