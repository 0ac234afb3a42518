"""Scripted chord-color derivations for the 3n-8 and 3n-10 ambient cycles.

Every script is a fixed sequence of engine primitives. Each intermediate
restriction is compared with its closed form in n; the first mismatch raises
:class:`ScriptStepFailed`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .colorset import ColorSet
from .gadget import (
    Chord,
    ConstraintStore,
    Contradiction,
    ContradictionCertificate,
    GadgetError,
    Walk,
    apply_symmetry,
    cycle_restriction,
    disjunction,
    forced_rainbow,
    map_colors,
    map_edge,
    map_walk,
    propagate,
    walk_from_steps,
)


class LemmaPreconditionError(GadgetError):
    pass


class ScriptStepFailed(GadgetError):
    def __init__(self, step: str, expected, got):
        super().__init__(f"step {step}: expected {expected!r}, got {got!r}")
        self.step = step
        self.expected = expected
        self.got = got


@dataclass(frozen=True)
class StepRecord:
    step: str
    expected: object
    got: object


@dataclass(frozen=True)
class Family:
    """Chords of one length with allowed set [i + offset, i + offset + width)."""

    name: str
    length: int
    offset: int
    width: int

    def expected(self, M: int, base: int) -> ColorSet:
        return ColorSet.arc(M, base + self.offset, self.width)


@dataclass(frozen=True)
class ChainResult:
    n: int
    M: int
    case: str
    store: ConstraintStore
    families: tuple[Family, ...]
    steps: tuple[StepRecord, ...] = ()
    notes: tuple[str, ...] = ()

    def family(self, name: str) -> Family:
        for f in self.families:
            if f.name == name:
                return f
        raise KeyError(name)

    def mismatches(self, fam: Family) -> list[int]:
        """Bases i where the installed set differs from the closed form."""
        bad = []
        for i in range(self.M):
            if self.store.allowed(Chord.canonical(self.M, i, i + fam.length)) != fam.expected(self.M, i):
                bad.append(i)
        return bad


class _Script:
    def __init__(self, n: int, M: int):
        self.n = n
        self.M = M
        self.steps: list[StepRecord] = []
        self.notes: list[str] = []

    def S(self, first: int, last: int) -> ColorSet:
        return ColorSet.span(self.M, first, last)

    def U(self, *parts: tuple[int, int]) -> ColorSet:
        return ColorSet.union_all(self.M, [self.S(a, b) for a, b in parts])

    def chord(self, u: int, v: int) -> Chord:
        return Chord.canonical(self.M, u, v)

    def walk(self, steps, rotation: int = 0) -> Walk:
        return walk_from_steps(self.M, rotation, steps)

    def check(self, step: str, got, expected) -> None:
        self.steps.append(StepRecord(step, expected, got))
        if isinstance(got, Contradiction) or got != expected:
            raise ScriptStepFailed(step, expected, got)

    def narrow(self, tag: str, store: ConstraintStore, target: Chord, cycles, final: ColorSet,
               respect_prior: bool = True) -> ColorSet:
        """Intersect the restrictions of several cycles through ``target``.

        ``cycles`` holds (name, walk, expected restriction). Without
        ``respect_prior`` the target's current set is ignored.
        """
        work = store if respect_prior else store.without([target])
        running = work.allowed(target)
        for name, walk, expected in cycles:
            raw = cycle_restriction(walk, target, work)
            self.check(f"{tag}:{name}:restriction", raw, expected)
            got = propagate(walk, target, work.replaced({target: running}) if running else work)
            running = got if not isinstance(got, Contradiction) else ColorSet.empty(self.M)
        self.check(f"{tag}:final", running, final)
        return running

    def wlog(self, tag: str, store: ConstraintStore, walk: Walk, x: Chord, y: Chord,
             branch: ColorSet, rotation: int) -> ConstraintStore:
        """Non-rainbow walk forces x or y into ``branch``; a reflection swaps them."""
        disj = disjunction(walk, store)
        self.check(f"{tag}:disjunction", disj, {x: branch, y: branch})
        if map_walk(walk, rotation, True).edge_set() != walk.edge_set():
            raise ScriptStepFailed(f"{tag}:walk-symmetric", walk.edge_set(),
                                   map_walk(walk, rotation, True).edge_set())
        self.check(f"{tag}:store-symmetric", apply_symmetry(store, rotation, True), store)
        self.check(f"{tag}:branches-swap",
                   (map_edge(self.M, x, rotation, True), map_colors(branch, rotation, True)),
                   (y, branch))
        return store.refined({x: branch})

    def result(self, case: str, store: ConstraintStore, families) -> ChainResult:
        return ChainResult(self.n, self.M, case, store, tuple(families),
                           tuple(self.steps), tuple(self.notes))


def _perimeter_family(sc: _Script, store: ConstraintStore, n: int) -> ConstraintStore:
    """Chord (i, i+n-1) closes the perimeter n-cycle i -> ... -> i+n-1."""
    M = sc.M
    updates = {}
    for i in range(M):
        walk = sc.walk([1] * (n - 1) + [M - (n - 1)], i)
        target = sc.chord(i, i + n - 1)
        got = propagate(walk, target, store)
        expected = sc.S(i, i + n - 2)
        if i == 0:
            sc.check("perimeter:0", got, expected)
        elif got != expected:
            sc.check(f"perimeter:{i}", got, expected)
        updates[target] = got
    return store.refined(updates)


def _rotation_chain(sc: _Script, tag: str, store: ConstraintStore, A: list[int], start: int,
                    stride: int, count: int, width: int) -> ConstraintStore:
    """Walk the chain s -> s + stride deriving chord (s+stride, s+stride+n-1).

    ``A`` contains chords (0, n-1) and (r, r + ...) so that A rotated by s+stride
    contains the known chord at base s and the target at base s + stride.
    """
    n = sc.n
    s = start
    for _ in range(count):
        t = (s + stride) % sc.M
        walk = sc.walk(A, t)
        target = sc.chord(t, t + n - 1)
        got = propagate(walk, target, store)
        sc.check(f"{tag}:{t}", got, sc.S(t, t + width - 1))
        store = store.refined({target: got})
        s = t
    return store


# ---------------------------------------------------------------- even case

def _require_even(n: int, least: int) -> None:
    if n % 2 or n < least:
        raise LemmaPreconditionError(f"need even n >= {least}, got {n}")


def even_long_chords(n: int, sc: _Script | None = None):
    _require_even(n, 12)
    M = 3 * n - 8
    sc = sc or _Script(n, M)
    store = _perimeter_family(sc, ConstraintStore.fresh(M), n)
    A = [n - 1] + [1] * (n - 4) + [n - 1, -1, -1]
    walk_A = sc.walk(A)
    store = sc.wlog("even-long:A", store, walk_A, sc.chord(0, n - 1), sc.chord(2, 2 * n - 5),
                    sc.S(0, 1), rotation=2)
    if gcd(M, n - 3) != 1:
        raise ScriptStepFailed("even-long:coprime", 1, gcd(M, n - 3))
    store = _rotation_chain(sc, "even-long:B", store, A, 0, n - 3, M - 1, 2)
    return sc, store


def even_mid_chords(n: int, sc: _Script, store: ConstraintStore) -> ConstraintStore:
    _require_even(n, 12)
    M = sc.M
    A = [n - 5, n - 1] + [1] * (n - 2)
    B = [n - 5] + [1] * (n - 2) + [n - 1]
    C = [n - 5, 1, n - 1] + [1] * (n - 3)
    updates = {}
    for i in range(M):
        def S(a, b):
            return sc.S(i + a, i + b)
        U = lambda *p: ColorSet.union_all(M, [S(a, b) for a, b in p])  # noqa: E731
        target = sc.chord(i, i + n - 5)
        updates[target] = sc.narrow(f"even-mid@{i}", store, target, [
            ("A", sc.walk(A, i), U((n - 5, n - 4), (2 * n - 6, 3 * n - 9))),
            ("B", sc.walk(B, i), U((n - 5, 2 * n - 8), (2 * n - 7, 2 * n - 6))),
            ("C", sc.walk(C, i), U((n - 5, n - 3), (2 * n - 5, 3 * n - 9))),
        ], S(n - 5, n - 4))
    return store.refined(updates)


def even_seven_chords(n: int, sc: _Script, store: ConstraintStore) -> ConstraintStore:
    _require_even(n, 12)
    M = sc.M
    A = [7, n - 5] + [-1] * (n - 7) + [n - 5, n - 5, -1, -1, n - 5]
    B = [7, n - 5, n - 5] + [-1] * (n - 10) + [n - 5, n - 5] + [-1] * 5
    C = [7, -1, -1, n - 5, n - 5, n - 5] + [-1] * (n - 10) + [n - 5] + [-1] * 3
    coincide = n - 5 == 7
    updates = {}
    for i in range(M):
        def S(a, b):
            return sc.S(i + a, i + b)
        U = lambda *p: ColorSet.union_all(M, [S(a, b) for a, b in p])  # noqa: E731
        target = sc.chord(i, i + 7)
        walk_A, walk_B, walk_C = sc.walk(A, i), sc.walk(B, i), sc.walk(C, i)
        tag = f"even-7@{i}"
        work = store.without([target]) if coincide else store
        ra = cycle_restriction(walk_A, target, work)
        sc.check(f"{tag}:A:restriction", ra, U((0, 1), (9, n + 5), (2 * n - 3, 2 * n)))
        rb = cycle_restriction(walk_B, target, work)
        sc.check(f"{tag}:B:restriction", rb,
                 U((0, 6), (n + 2, n + 3), (n + 7, 2 * n - 2), (2 * n + 2, 2 * n + 3)))
        sc.check(f"{tag}:AB", ra & rb, U((0, 1), (n + 2, n + 3), (2 * n - 3, 2 * n - 2)))
        updates[target] = sc.narrow(tag, store, target, [
            ("A", walk_A, ra),
            ("B", walk_B, rb),
            ("C", walk_C, U((0, 6), (n, n + 1), (2 * n - 5, 2 * n - 4), (2 * n, 3 * n - 9))),
        ], S(0, 1), respect_prior=not coincide)
    if coincide:
        # chords of length 7 already carry {i+7, i+8}; both families cannot hold at once
        clash = [c for c, s in updates.items() if s.isdisjoint(store.allowed(c))]
        sc.notes.append(
            f"n={n}: length n-5 equals 7; the two families are disjoint on "
            f"{len(clash)} of {M} chords, so the hypotheses are already contradictory; "
            "the length-7 family supersedes the n-5 family in the returned store")
        return store.replaced(updates)
    return store.refined(updates)


def lemma_even_chain(n: int) -> ChainResult:
    """Families (n-1: {i,i+1}), (n-5: {i+n-5,i+n-4}), (7: {i,i+1}) on M = 3n-8."""
    if n % 2 or n <= 10:
        raise LemmaPreconditionError(f"need even n > 10, got {n}")
    sc, store = even_long_chords(n)
    store = even_mid_chords(n, sc, store)
    store = even_seven_chords(n, sc, store)
    families = [Family("n-1", n - 1, 0, 2), Family("7", 7, 0, 2)]
    if n - 5 != 7:
        families.insert(1, Family("n-5", n - 5, n - 5, 2))
    return sc.result("even", store, families)


# ---------------------------------------------------------------- div4 case

def _require_div4(n: int, least: int) -> None:
    if n % 4 or n < least:
        raise LemmaPreconditionError(f"need n = 4k >= {least}, got {n}")


def cycle_E(n: int) -> list[int]:
    """Steps of the odd-branch refutation cycle (n = 4k >= 12)."""
    return [n - 1, 1, n - 1] + [-1] * (n // 2 + 2) + [n - 1] + [1] * (n // 2 - 6)


def div4_long_chords(n: int, sc: _Script | None = None):
    _require_div4(n, 12)
    M = 3 * n - 10
    sc = sc or _Script(n, M)
    store = _perimeter_family(sc, ConstraintStore.fresh(M), n)
    A = [n - 1] + [1] * (n - 5) + [n - 1, -1, -1, -1]
    store = sc.wlog("div4-long:A", store, sc.walk(A), sc.chord(0, n - 1), sc.chord(3, 2 * n - 6),
                    sc.S(0, 2), rotation=3)
    if gcd(M, n - 4) != 2:
        raise ScriptStepFailed("div4-long:gcd", 2, gcd(M, n - 4))
    half = M // 2
    even_store = _rotation_chain(sc, "div4-long:B-even", store, A, 0, n - 4, half - 1, 3)

    # odd branch: suppose gamma(1, n) avoids {1, 2, 3}
    first = sc.chord(1, n)
    branch = even_store.refined({first: even_store.allowed(first) - sc.S(1, 3)})
    j = 2 * n - 5
    known = sc.chord(j, j + n - 1)
    got = propagate(sc.walk(A, 1), known, branch)
    sc.check("div4-long:odd:A+1", got, sc.S(1, 3))
    branch = branch.refined({known: got})
    s = j
    for _ in range(half - 1):
        t = (s - (n - 4)) % M
        target = sc.chord(t, t + n - 1)
        got = propagate(sc.walk(A, s), target, branch)
        sc.check(f"div4-long:odd:ccw:{t}", got, sc.S(t + n - 4, t + n - 2))
        branch = branch.refined({target: got})
        s = t
    E = sc.walk(cycle_E(n))
    colors = [branch.allowed(e) for e in E.edges()]
    h = n // 2
    listed = ([sc.S(0, 2), sc.S(n - 1, n - 1), sc.S(n, n + 2)]
              + [sc.S(c, c) for c in range(2 * n - 2, 3 * h - 4, -1)]
              + [sc.S(5 * h - 7, 5 * h - 5)]
              + [sc.S(c, c) for c in range(5 * h - 4, 3 * n - 10)])
    sc.check("div4-long:E:colors", colors, listed)
    cert = forced_rainbow(E, branch)
    if not isinstance(cert, ContradictionCertificate):
        raise ScriptStepFailed("div4-long:E:rainbow", "certificate", cert)
    sc.steps.append(StepRecord("div4-long:odd:refuted", "certificate", "certificate"))

    store = even_store.refined({first: sc.S(1, 3)})
    store = _rotation_chain(sc, "div4-long:B-odd", store, A, 1, n - 4, half - 1, 3)
    return sc, store


def div4_mid_chords(n: int, sc: _Script, store: ConstraintStore) -> ConstraintStore:
    _require_div4(n, 12)
    M = sc.M
    A = [n - 7, n - 1] + [1] * (n - 2)
    B = [n - 7] + [1] * (n - 2) + [n - 1]
    C = [n - 7, 1, 1, n - 1] + [1] * (n - 4)
    sc.notes.append("div4-mid: the B restriction is read as a bound on gamma(0, n-7); "
                    "the printed gamma(0, 7) does not name an edge of B")
    updates = {}
    for i in range(M):
        def S(a, b):
            return sc.S(i + a, i + b)
        U = lambda *p: ColorSet.union_all(M, [S(a, b) for a, b in p])  # noqa: E731
        target = sc.chord(i, i + n - 7)
        updates[target] = sc.narrow(f"div4-mid@{i}", store, target, [
            ("A", sc.walk(A, i), U((n - 7, n - 5), (2 * n - 8, 3 * n - 11))),
            ("B", sc.walk(B, i), S(n - 7, 2 * n - 7)),
            ("C", sc.walk(C, i), U((n - 7, n - 3), (2 * n - 6, 3 * n - 11))),
        ], S(n - 7, n - 5))
    return store.refined(updates)


def div4_thirteen_chords(n: int, sc: _Script, store: ConstraintStore) -> ConstraintStore:
    _require_div4(n, 20)
    M = sc.M
    A = [13, n - 7] + [-1] * (n - 10) + [n - 7, n - 7] + [-1] * 5 + [n - 7]
    B = [13, n - 7, n - 7] + [-1] * (n - 13) + [n - 7, n - 7] + [-1] * 8
    C = [13] + [-1] * 5 + [n - 7, n - 7, n - 7] + [-1] * (n - 15) + [n - 7] + [-1] * 5
    coincide = n - 7 == 13
    updates = {}
    for i in range(M):
        def S(a, b):
            return sc.S(i + a, i + b)
        U = lambda *p: ColorSet.union_all(M, [S(a, b) for a, b in p])  # noqa: E731
        target = sc.chord(i, i + 13)
        updates[target] = sc.narrow(f"div4-13@{i}", store, target, [
            ("A", sc.walk(A, i), U((0, 2), (16, n + 11), (2 * n - 3, 2 * n + 4))),
            ("B", sc.walk(B, i),
             U((0, 10), (n + 6, n + 8), (n + 12, 2 * n + 1), (2 * n + 5, 2 * n + 7))),
            ("C", sc.walk(C, i),
             U((0, 12), (n + 1, n + 3), (2 * n - 6, 2 * n - 4), (2 * n + 2, 3 * n - 11))),
        ], S(0, 2), respect_prior=not coincide)
    if coincide:
        clash = [c for c, s in updates.items() if s.isdisjoint(store.allowed(c))]
        sc.notes.append(
            f"n={n}: length n-7 equals 13; the two families are disjoint on "
            f"{len(clash)} of {M} chords, so the hypotheses are already contradictory; "
            "the length-13 family supersedes the n-7 family in the returned store")
        return store.replaced(updates)
    return store.refined(updates)


def lemma_div4_chain(n: int, through: int = 3) -> ChainResult:
    """Families (n-1: {i..i+2}), (n-7: {i+n-7..i+n-5}), (13: {i..i+2}) on M = 3n-10.

    ``through=2`` stops after the first two lemmas, which only need n = 4k >= 12.
    """
    _require_div4(n, 20 if through >= 3 else 12)
    sc, store = div4_long_chords(n)
    families = [Family("n-1", n - 1, 0, 3)]
    if through >= 2:
        store = div4_mid_chords(n, sc, store)
        families.append(Family("n-7", n - 7, n - 7, 3))
    if through >= 3:
        store = div4_thirteen_chords(n, sc, store)
        if n - 7 == 13:
            families.pop()
        families.append(Family("13", 13, 0, 3))
    return sc.result("div4", store, families)
