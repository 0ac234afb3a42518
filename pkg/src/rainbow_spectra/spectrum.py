"""Guaranteed members of spec(G) given a single member n.

The closure engine works on a boolean mask over [0, limit]. Rules:

R1  a, b        => a o b = a + b - 2
R2  even a >= 4 => 3a - 8
R3  a = 0 mod 4, a >= 4, a != 16 => 3a - 10
R4  odd a = 2k+1 >= 3 => 3a - 6, k(2k+1), every m >= 2a^2 - 13a + 23
R5  8 => 16, 10 => 22, 12 => 26   (imported computer results, ``external``)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from fractions import Fraction

import numpy as np

R1, R2, R3, R4_TRIPLE, R4_TRIANGULAR, R4_TAIL, R5, SEED = (
    "R1", "R2", "R3", "R4a", "R4b", "R4c", "R5", "seed")
_RULE_IDS = (SEED, R1, R2, R3, R4_TRIPLE, R4_TRIANGULAR, R4_TAIL, R5)
EXTERNAL_FACTS = {8: 16, 10: 22, 12: 26}


def monoid_op(a: int, b: int) -> int:
    if a < 2 or b < 2:
        raise ValueError("spectrum elements are >= 2")
    return a + b - 2


def period_class(n: int) -> int:
    if n < 3:
        raise ValueError("period class is defined for n >= 3")
    if n % 2:
        return 1
    return 2 if n % 4 == 0 else 4


def main_theorem_bound(n: int) -> tuple[int, int]:
    """(period divisor, bound on the progression start) for n in spec(G)."""
    if n < 3:
        raise ValueError("n must be >= 3")
    if n % 2:
        return 1, 2 * n * n - 13 * n + 23
    if n % 4 == 2:
        bound = Fraction(9, 4) * n * n - 18 * n + 37
        p = 4
    else:
        bound = Fraction(9, 2) * n * n - 39 * n + 86
        p = 2
    assert bound.denominator == 1, f"non-integral bound for n={n}"
    return p, int(bound)


@dataclass(frozen=True)
class TraceEntry:
    member: int
    rule: str
    premises: tuple[int, ...]

    @property
    def external(self) -> bool:
        return self.rule == R5


@dataclass(frozen=True)
class SpecFacts:
    seed_n: int
    limit: int
    rules: tuple[str, ...]
    mask: np.ndarray = field(repr=False, compare=False)
    _rule: np.ndarray = field(repr=False, compare=False)
    _p1: np.ndarray = field(repr=False, compare=False)
    _p2: np.ndarray = field(repr=False, compare=False)

    def __contains__(self, m: int) -> bool:
        return 0 <= m <= self.limit and bool(self.mask[m])

    @property
    def derived(self) -> tuple[int, ...]:
        return tuple(int(x) for x in np.flatnonzero(self.mask))

    @property
    def trace(self) -> list[TraceEntry]:
        out = []
        for m in np.flatnonzero(self.mask):
            rule = _RULE_IDS[self._rule[m]]
            prem = tuple(int(p) for p in (self._p1[m], self._p2[m]) if p >= 0)
            out.append(TraceEntry(int(m), rule, prem))
        return out


def _saturate(shifted: np.ndarray, g: int) -> None:
    L = len(shifted) - 1
    step = g
    while step <= L:
        shifted[step:] |= shifted[:L + 1 - step].copy()
        step *= 2


def _r1_closure(mask: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Close a mask under a o b; also return the minimal generators (shifted by -2)."""
    members = mask[2:]
    closure = np.zeros_like(members)
    closure[0] = True
    gens = []
    while True:
        missing = np.flatnonzero(members & ~closure)
        if not len(missing):
            break
        g = int(missing[0])
        gens.append(g)
        _saturate(closure, g)
    out = mask.copy()
    out[2:] = closure
    return out, gens


def implied_members(n: int, limit: int, rules=("R1", "R2", "R3", "R4", "R5")) -> SpecFacts:
    """Closure of {2, n} under the enabled rules, truncated at ``limit``."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if limit < n:
        raise ValueError("limit must be >= n")
    rules = tuple(rules)
    L = limit
    mask = np.zeros(L + 1, dtype=bool)
    rule = np.full(L + 1, -1, dtype=np.int8)
    p1 = np.full(L + 1, -1, dtype=np.int64)
    p2 = np.full(L + 1, -1, dtype=np.int64)
    for s in (2, n):
        mask[s] = True
        rule[s] = 0
    idx = np.arange(L + 1)

    def install(targets, premise, rule_id, premise2=None):
        targets = np.asarray(targets, dtype=np.int64)
        premise = np.asarray(premise, dtype=np.int64)
        keep = (targets >= 2) & (targets <= L)
        targets, premise = targets[keep], premise[keep]
        if premise2 is not None:
            premise2 = np.asarray(premise2, dtype=np.int64)[keep]
        fresh = ~mask[targets]
        targets, premise = targets[fresh], premise[fresh]
        if premise2 is not None:
            premise2 = premise2[fresh]
        # first (smallest premise) derivation wins for duplicate targets
        targets, first = np.unique(targets, return_index=True)
        if not len(targets):
            return False
        mask[targets] = True
        rule[targets] = rule_id
        p1[targets] = premise[first]
        if premise2 is not None:
            p2[targets] = premise2[first]
        return True

    changed = True
    while changed:
        changed = False
        if "R1" in rules:
            closed, gens = _r1_closure(mask)
            new = closed & ~mask
            if new.any():
                changed = True
                pending = new[2:].copy()
                positive = closed[2:].copy()
                positive[0] = False
                for g in gens:
                    hit = np.zeros_like(pending)
                    hit[g:] = pending[g:] & positive[:len(pending) - g]
                    x = np.flatnonzero(hit)
                    rule[x + 2], p1[x + 2], p2[x + 2] = 1, x - g + 2, g + 2
                    pending &= ~hit
                assert not pending.any()
                mask |= closed
        if "R2" in rules:
            a = idx[mask & (idx % 2 == 0) & (idx >= 4)]
            changed |= install(3 * a - 8, a, 2)
        if "R3" in rules:
            a = idx[mask & (idx % 4 == 0) & (idx >= 4) & (idx != 16)]
            changed |= install(3 * a - 10, a, 3)
        if "R4" in rules:
            a = idx[mask & (idx % 2 == 1) & (idx >= 3)]
            changed |= install(3 * a - 6, a, 4)
            k = (a - 1) // 2
            changed |= install(k * (2 * k + 1), a, 5)
            if len(a):
                tails = 2 * a * a - 13 * a + 23
                best = int(np.argmin(tails))
                start = max(int(tails[best]), 2)
                if start <= L:
                    t = np.arange(start, L + 1)
                    changed |= install(t, np.full(len(t), a[best]), 6)
        if "R5" in rules:
            for a, b in EXTERNAL_FACTS.items():
                if a <= L and mask[a]:
                    changed |= install([b], [a], 7)
    return SpecFacts(n, L, rules, mask, rule, p1, p2)


def replay(trace: list[TraceEntry], limit: int) -> tuple[int, ...]:
    """Re-derive members from a trace, checking every step."""
    have: set[int] = set()
    for e in sorted(trace, key=lambda e: e.member):
        m, pr = e.member, e.premises
        if e.rule != SEED and not all(p in have for p in pr):
            raise ValueError(f"premise missing for {e}")
        ok = {
            SEED: lambda: True,
            R1: lambda: len(pr) == 2 and monoid_op(*pr) == m,
            R2: lambda: pr[0] % 2 == 0 and pr[0] >= 4 and 3 * pr[0] - 8 == m,
            R3: lambda: pr[0] % 4 == 0 and pr[0] not in (16,) and 3 * pr[0] - 10 == m,
            R4_TRIPLE: lambda: pr[0] % 2 == 1 and 3 * pr[0] - 6 == m,
            R4_TRIANGULAR: lambda: pr[0] % 2 == 1 and (pr[0] - 1) // 2 * pr[0] == m,
            R4_TAIL: lambda: pr[0] % 2 == 1 and m >= 2 * pr[0] ** 2 - 13 * pr[0] + 23,
            R5: lambda: EXTERNAL_FACTS.get(pr[0]) == m,
        }[e.rule]()
        if not ok:
            raise ValueError(f"rule does not justify {e}")
        have.add(m)
    return tuple(sorted(x for x in have if x <= limit))


def verify_progression(n: int, p: int, N: int, limit: int) -> tuple[bool, int | None]:
    """Check {N + k p} <= limit against the closure; return least missing member."""
    if limit < N:
        raise ValueError("limit must be >= N")
    facts = implied_members(n, limit)
    for m in range(N, limit + 1, p):
        if m not in facts:
            return False, m
    return True, None


def difference_gcd(members) -> int:
    ms = sorted(members)
    g = 0
    for a, b in zip(ms, ms[1:]):
        g = gcd(g, b - a)
    return g
