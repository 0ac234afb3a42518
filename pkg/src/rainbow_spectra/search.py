"""Witness n-cycles that every admissible coloring forces to be rainbow.

Two step-multiset families are handled:

* even n, M = 3n - 8: two edges of length n-1, n/2 - 2 of length 7, n/2 of length 1;
* n = 4k, M = 3n - 10: eight edges of length n-1, k-2 of length 13, 3k-6 of length 1.

All steps are forward. An edge of length L leaving vertex v may take the
colors v, ..., v + width(L) - 1.
"""

from __future__ import annotations

import re
import sys
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .colorset import ColorSet
from .gadget import (
    Chord,
    ConstraintStore,
    ContradictionCertificate,
    GadgetError,
    NotClosedError,
    RepeatedVertexError,
    forced_rainbow,
    walk_from_steps,
)


class SearchError(ValueError):
    pass


class InequalityFailed(SearchError):
    def __init__(self, which: Sequence[str], report: Mapping[str, bool]):
        super().__init__(f"inequalities failed: {', '.join(which)}")
        self.which = tuple(which)
        self.report = dict(report)


class ConstructionInvariantFailed(SearchError):
    pass


class CompactParseError(SearchError):
    pass


class VertexMismatchError(CompactParseError):
    pass


# ------------------------------------------------------------------ multisets

@dataclass(frozen=True)
class StepMultiset:
    counts: tuple[tuple[int, int], ...]

    def __init__(self, counts: Mapping[int, int] | Iterable[tuple[int, int]]):
        items = dict(counts).items() if not isinstance(counts, dict) else counts.items()
        clean = tuple(sorted((int(k), int(v)) for k, v in items if v))
        if any(v < 0 for _, v in clean):
            raise SearchError("counts must be positive")
        object.__setattr__(self, "counts", clean)

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    @property
    def n(self) -> int:
        return sum(v for _, v in self.counts)

    @property
    def total(self) -> int:
        return sum(k * v for k, v in self.counts)

    @classmethod
    def of_steps(cls, steps: Iterable[int]) -> "StepMultiset":
        return cls(Counter(steps))


def even_multiset(n: int) -> StepMultiset:
    if n % 2 or n < 12:
        raise SearchError(f"need even n >= 12, got {n}")
    ms = StepMultiset({n - 1: 2, 7: n // 2 - 2, 1: n // 2})
    assert ms.total == 2 * (3 * n - 8)
    return ms


def div4_multiset(k: int) -> StepMultiset:
    if k < 3:
        raise SearchError(f"need k >= 3, got {k}")
    n = 4 * k
    ms = StepMultiset({n - 1: 8, 13: k - 2, 1: 3 * k - 6})
    assert ms.total == 4 * (3 * n - 10)
    return ms


# ------------------------------------------------------------------ families

@dataclass(frozen=True)
class ConstraintFamily:
    """Allowed colors of forward edges by length: [v, v + width) for an edge leaving v."""

    name: str
    M: int
    widths: tuple[tuple[int, int], ...]
    multiset: StepMultiset | None = None

    def width(self, length: int) -> int:
        for L, w in self.widths:
            if L == length:
                return w
        raise SearchError(f"family {self.name} has no edges of length {length}")

    def colors(self, v: int, step: int) -> ColorSet:
        base = v if step > 0 else (v + step) % self.M
        return ColorSet.arc(self.M, base, self.width(abs(step)))

    @cached_property
    def store(self) -> ConstraintStore:
        sets = {}
        for L, w in self.widths:
            if L == 1:
                if w != 1:
                    raise SearchError("perimeter edges have a single color")
                continue
            for i in range(self.M):
                sets[Chord.canonical(self.M, i, i + L)] = ColorSet.arc(self.M, i, w)
        return ConstraintStore.fresh(self.M).replaced(sets)


def even_family(n: int) -> ConstraintFamily:
    return ConstraintFamily(f"even-chain({n})", 3 * n - 8, ((1, 1), (7, 2), (n - 1, 2)),
                            even_multiset(n))


def div4_family(k: int) -> ConstraintFamily:
    n = 4 * k
    return ConstraintFamily(f"div4-chain({n})", 3 * n - 10, ((1, 1), (13, 3), (n - 1, 3)),
                            div4_multiset(k))


def family_from_chain(chain, lengths: Iterable[int], multiset: StepMultiset | None = None) -> ConstraintFamily:
    """Read a family off a lemma-chain store; each length must be uniform [i, i+w)."""
    M = chain.M
    widths = [(1, 1)]
    for L in lengths:
        first = chain.store.allowed(Chord.canonical(M, 0, L))
        arcs = first.arcs
        if len(arcs) != 1 or arcs[0][0] != 0:
            raise SearchError(f"length {L} is not of the form [i, i+w)")
        w = arcs[0][1]
        for i in range(M):
            if chain.store.allowed(Chord.canonical(M, i, i + L)) != ColorSet.arc(M, i, w):
                raise SearchError(f"length {L} is not rotation invariant at {i}")
        widths.append((L, w))
    return ConstraintFamily(f"{chain.case}-chain({chain.n})", M, tuple(sorted(widths)), multiset)


# ------------------------------------------------------------------ certificates

@dataclass(frozen=True)
class CycleCertificate:
    M: int
    n: int
    steps: tuple[int, ...]
    vertices: tuple[int, ...]
    constraint_family: str
    multiset_ok: bool
    closed_ok: bool
    distinct_ok: bool
    forced_rainbow_ok: bool
    witness: tuple[tuple[int, int], tuple[int, int]] | None = None
    detail: str = ""

    @property
    def valid(self) -> bool:
        return self.multiset_ok and self.closed_ok and self.distinct_ok and self.forced_rainbow_ok

    def to_dict(self) -> dict:
        return {
            "M": self.M, "n": self.n, "steps": list(self.steps), "vertices": list(self.vertices),
            "constraint_family": self.constraint_family,
            "multiset_ok": self.multiset_ok, "closed_ok": self.closed_ok,
            "distinct_ok": self.distinct_ok, "forced_rainbow_ok": self.forced_rainbow_ok,
            "witness": [list(e) for e in self.witness] if self.witness else None,
            "detail": self.detail, "valid": self.valid,
        }


def verify_cycle(M: int, steps: Sequence[int], n: int, family: ConstraintFamily) -> CycleCertificate:
    steps = tuple(int(s) for s in steps)
    problems = []
    if family.M != M:
        problems.append(f"family modulus {family.M} != {M}")
    expected = family.multiset
    multiset_ok = len(steps) == n and (expected is None or StepMultiset.of_steps(steps) == expected)
    if not multiset_ok:
        problems.append(f"step multiset {dict(Counter(steps))} != {expected.as_dict() if expected else None}")
    closed_ok = sum(steps) % M == 0
    if not closed_ok:
        problems.append("walk does not close")
    vertices = []
    v = 0
    for s in steps:
        vertices.append(v)
        v = (v + s) % M
    distinct_ok = len(set(vertices)) == len(vertices) and len(steps) >= 3
    if not distinct_ok:
        problems.append("repeated vertex")
    rainbow_ok, witness = False, None
    if closed_ok and distinct_ok and family.M == M:
        try:
            for s in set(steps):
                family.width(abs(s))
            walk = walk_from_steps(M, 0, steps)
            got = forced_rainbow(walk, family.store)
        except (GadgetError, SearchError) as exc:
            problems.append(str(exc))
        else:
            rainbow_ok = isinstance(got, ContradictionCertificate)
            if not rainbow_ok:
                witness = tuple(c.endpoints(M) for c in got.pair)
                problems.append(f"edges {witness[0]} and {witness[1]} may share a color")
    return CycleCertificate(M, n, steps, tuple(vertices), family.name, multiset_ok,
                            closed_ok, distinct_ok, rainbow_ok, witness, "; ".join(problems))


# ------------------------------------------------------------------ inequalities

@dataclass(frozen=True)
class ConstructionTrace:
    case: str
    n: int
    k: int | None
    M: int
    d: int | None = None
    z: int | None = None
    y: int | None = None
    u: int | None = None
    r: int | None = None
    d1: int | None = None
    d2: int | None = None
    round_positions: tuple[int, ...] = ()
    inequality_report: Mapping[str, bool] = field(default_factory=dict)
    hardcoded: bool = False


def div4_parameters(k: int) -> tuple[int, int, int]:
    """(r, d1, d2) for n = 4k."""
    n = 4 * k
    M = 3 * n - 10
    r = -(-(4 * k - 5) // 13)
    d1 = 2 * (n - 1) + 13 * r - M
    d2 = (n + 8) % 13
    assert (d1 + d2) % 13 == 3
    return r, d1, d2


def check_inequalities_div4(k: int) -> dict[str, bool]:
    if k < 3:
        raise SearchError("need k >= 3")
    n = 4 * k
    r, d1, d2 = div4_parameters(k)
    return {
        "x1": 3 * r <= k - 2,
        "x2": 13 + 3 * d2 <= 3 * k - 6,
        "x3": 13 + 3 * (d1 + d2) <= 4 * k - 4,
        "x4": (n - 1) + 13 * r + 2 * (d1 + d2) + 3 <= 3 * (d1 + d2) + 13 + 2 * (n - 1),
    }


CYCLE_12 = (0, 11, 12, 13, 14, 15, 16, 23, 2, 9, 20, 27)


def construct_even(n: int) -> tuple[ConstructionTrace, list[int]]:
    """Two-revolution witness for even n >= 12; n = 12 uses a fixed cycle."""
    if n % 2 or n < 12:
        raise SearchError(f"need even n >= 12, got {n}")
    M = 3 * n - 8
    family = even_family(n)
    if n == 12:
        vs = CYCLE_12
        steps = [(vs[(i + 1) % len(vs)] - vs[i]) % M for i in range(len(vs))]
        trace = ConstructionTrace("even", n, None, M, hardcoded=True)
    else:
        d = next(d for d in range(7) if (M - (n - 1 + d)) % 7 == 2)
        z = 5 + n // 2 - d
        report = {"d-range": 0 <= d <= 6 <= n // 2, "z-bound": z <= n - 3, "z-after-d": z > d}
        if not all(report.values()):
            raise InequalityFailed([k for k, v in report.items() if not v], report)
        steps = [n - 1] + [1] * d
        pos = n - 1 + d
        sevens_start = pos
        while pos != M + 5:
            steps.append(7)
            pos += 7
            if pos > M + 5:
                raise ConstructionInvariantFailed("sevens overshoot vertex 5")
        steps += [1] * (n // 2 - d)
        steps.append(n - 1)
        y = z + n - 1
        used7 = steps.count(7)
        steps += [7] * (n // 2 - 2 - used7)
        if y <= sevens_start:
            raise ConstructionInvariantFailed("y is not past the first run of sevens")
        u = sevens_start + 7 * ((y - sevens_start - 1) // 7)
        if y - u != 2:
            raise ConstructionInvariantFailed(f"crossing offset y - u = {y - u}, expected 2")
        trace = ConstructionTrace("even", n, None, M, d=d, z=z, y=y, u=u,
                                  inequality_report=report)
    cert = verify_cycle(M, steps, n, family)
    if not cert.valid:
        raise ConstructionInvariantFailed(cert.detail)
    return trace, steps


def construct_div4(k: int) -> tuple[ConstructionTrace, list[int]]:
    """Four-revolution witness for n = 4k, M = 3n - 10."""
    report = check_inequalities_div4(k)
    if not all(report.values()):
        raise InequalityFailed([x for x, ok in report.items() if not ok], report)
    n = 4 * k
    M = 3 * n - 10
    r, d1, d2 = div4_parameters(k)
    steps: list[int] = []
    rounds = []
    pos = 0
    for rnd in range(3):
        steps.append(n - 1)
        pos += n - 1
        if rnd:
            rounds.append(pos)
        steps += [13] * r + [n - 1] + [1] * d2
        pos = (pos + 13 * r + n - 1 + d2) % M
        if pos != (rnd + 1) * (d1 + d2):
            raise ConstructionInvariantFailed(f"round {rnd + 1} ends at {pos}")
    steps += [1] * 13 + [n - 1]
    rounds.append(3 * (d1 + d2) + 13 + n - 1)
    steps.append(n - 1)
    y = 3 * (d1 + d2) + 13 + 2 * (n - 1)
    for x, want in zip(rounds, (3, 6, 9)):
        if (x - (n - 1)) % 13 != want:
            raise ConstructionInvariantFailed(f"round position {x} not {want} mod 13")
    if not rounds[0] < rounds[1] < rounds[2]:
        raise ConstructionInvariantFailed("round positions not increasing")
    ms = div4_multiset(k).as_dict()
    steps += [13] * (ms[13] - steps.count(13))
    steps += [1] * (ms[1] - steps.count(1))
    trace = ConstructionTrace("div4", n, k, M, r=r, d1=d1, d2=d2, y=y,
                              round_positions=tuple(rounds), inequality_report=report)
    cert = verify_cycle(M, steps, n, div4_family(k))
    if not cert.valid:
        raise ConstructionInvariantFailed(cert.detail)
    return trace, steps


# ------------------------------------------------------------------ backtracking

FOUND, NONE, BUDGET = "found", "none", "budget-exhausted"


@dataclass(frozen=True)
class SearchResult:
    status: str
    steps: tuple[int, ...] | None
    nodes: int

    def __bool__(self) -> bool:
        return self.status == FOUND


def backtrack_search(M: int, ms: StepMultiset, family: ConstraintFamily,
                     ordering: Sequence[int] | None = None, exhaustive: bool = False,
                     node_budget: int | None = 10**8, progress=None) -> SearchResult:
    """Depth-first search from vertex 0 for a forced-rainbow closed walk using ``ms``.

    Children are tried in ``ordering`` (default: increasing length). A node is
    one edge appended to the path. With ``exhaustive`` the budget is ignored
    and a ``none`` result means no such walk exists.
    """
    counts = ms.as_dict()
    order = list(ordering) if ordering is not None else sorted(counts, key=abs)
    if sorted(order) != sorted(counts):
        raise SearchError("ordering must list each step length of the multiset once")
    if exhaustive:
        node_budget = None
    total = ms.n
    # colors[j][v]: bitmask of colors an edge of step order[j] leaving v may take
    colors = []
    for s in order:
        w = family.width(abs(s))
        row = []
        for v in range(M):
            base = v if s > 0 else (v + s) % M
            m = 0
            for c in range(base, base + w):
                m |= 1 << (c % M)
            row.append(m)
        colors.append(row)
    remaining = [counts[s] for s in order]
    steps_j = list(range(len(order)))
    path: list[int] = []
    nodes = 0
    budget = node_budget if node_budget is not None else -1
    limit = sys.getrecursionlimit()
    if total + 100 > limit:
        sys.setrecursionlimit(total + 1000)

    class _Out(Exception):
        pass

    def dfs(v: int, used_v: int, used_c: int, depth: int) -> bool:
        nonlocal nodes
        last = depth == total - 1
        for j in steps_j:
            if not remaining[j]:
                continue
            s = order[j]
            w = (v + s) % M
            if last:
                if w != 0:
                    continue
            elif used_v >> w & 1:
                continue
            cm = colors[j][v]
            if used_c & cm:
                continue
            nodes += 1
            if nodes == budget:
                raise _Out
            if progress is not None and nodes % 1_000_000 == 0:
                progress(nodes)
            path.append(s)
            if last:
                return True
            remaining[j] -= 1
            if dfs(w, used_v | 1 << w, used_c | cm, depth + 1):
                return True
            remaining[j] += 1
            path.pop()
        return False

    try:
        found = dfs(0, 1, 0, 0)
    except _Out:
        return SearchResult(BUDGET, None, nodes)
    finally:
        sys.setrecursionlimit(limit)
    if found:
        return SearchResult(FOUND, tuple(path), nodes)
    return SearchResult(NONE, None, nodes)


# ------------------------------------------------------------------ compact notation

_LATEX = [
    (re.compile(r"\\nxm\{(\d+)\}\{(-?\d+)\}"), r" ->^\1 \2 "),
    (re.compile(r"\\nxo\{(-?\d+)\}"), r" ->\1 "),
    (re.compile(r"\\nxt"), " -> "),
]
_TOKEN = re.compile(r"(?:→|->)\^(\d+)\s+(-?\d+)|(?:→|->)(-?\d+)|(→|->)|(-?\d+)|(\S)")


def parse_compact(notation: str, M: int) -> list[int]:
    """Expand compact cycle notation into the full list of signed steps.

    ``a ->m b`` is one edge of length m, ``a ->^t m b`` is t successive edges
    of length m, and a bare arrow ``a -> b`` is the forward edge from a to b.
    Every stated vertex is checked against the running position mod M.
    """
    text = notation.replace("$", " ").replace("\\,", " ")
    for pat, rep in _LATEX:
        text = pat.sub(rep, text)
    tokens = []
    for mt in _TOKEN.finditer(text):
        t, m, single, bare, vertex, junk = mt.groups()
        if junk is not None:
            raise CompactParseError(f"unexpected character {junk!r} at {mt.start()}")
        if t is not None:
            tokens.append(("group", int(t), int(m)))
        elif single is not None:
            tokens.append(("group", 1, int(single)))
        elif bare is not None:
            tokens.append(("bare",))
        else:
            tokens.append(("vertex", int(vertex)))
    if not tokens or tokens[0][0] != "vertex":
        raise CompactParseError("notation must start with a vertex")
    steps: list[int] = []
    pos = tokens[0][1] % M
    expect_vertex = False
    pending_bare = False
    for tok in tokens[1:]:
        if tok[0] == "vertex":
            if not expect_vertex:
                raise CompactParseError(f"two vertices in a row near {tok[1]}")
            v = tok[1] % M
            if pending_bare:
                steps.append((v - pos) % M)
                pos = v
                pending_bare = False
            elif v != pos:
                raise VertexMismatchError(f"stated vertex {tok[1]} but walk is at {pos}")
            expect_vertex = False
        else:
            if expect_vertex:
                raise CompactParseError("two edge groups in a row")
            if tok[0] == "bare":
                pending_bare = True
            else:
                _, t, m = tok
                steps += [m] * t
                pos = (pos + t * m) % M
            expect_vertex = True
    if expect_vertex:
        raise CompactParseError("notation must end with a vertex")
    return steps


def format_compact(steps: Sequence[int], M: int, start: int = 0) -> str:
    out = [str(start % M)]
    pos = start % M
    i = 0
    while i < len(steps):
        j = i
        while j < len(steps) and steps[j] == steps[i]:
            j += 1
        t, m = j - i, steps[i]
        pos = (pos + t * m) % M
        out.append(f"→{m}" if t == 1 else f"→^{t} {m}")
        out.append(str(pos))
        i = j
    return " ".join(out)


# ------------------------------------------------------------------ known witness cycles

CYCLE_K5 = (0, 1, 2, 3, 16, 17, 18, 37, 6, 25, 26, 27, 46, 9, 22, 41, 42, 43, 12, 31, 0)
COMPACT_K22 = (
    "0 →87 87 →^13 1 100 →^6 13 178 →87 11 →^5 1 16 →87 103 →^7 13 194 →87 27 "
    "→^5 1 32 →87 119 →^7 13 210 →87 43 →^5 1 48 →^2 87 222 →^32 1 0")
COMPACT_K25 = (
    "0 →99 99 →^13 1 112 →^7 13 203 →99 12 →^4 1 16 →99 115 →^8 13 219 →99 28 "
    "→^4 1 32 →99 131 →^8 13 235 →99 44 →^4 1 48 →^2 99 246 →^44 1 0")
X_SET = frozenset({11, 20, 23, 24, 26, 27, 29, 30, 32, 33})


def steps_from_vertices(vertices: Sequence[int], M: int) -> list[int]:
    vs = [v % M for v in vertices]
    if len(vs) > 1 and vs[-1] == vs[0]:
        vs = vs[:-1]
    return [(vs[(i + 1) % len(vs)] - vs[i]) % M for i in range(len(vs))]
