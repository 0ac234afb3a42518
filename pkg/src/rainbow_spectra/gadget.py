"""Constraint propagation on a rainbow ambient M-cycle.

Vertices and colors are residues mod M and the perimeter edge (i, i+1) has
color i. Chords carry allowed-color sets; every walk whose length lies in
spec(G) must be non-rainbow, which lets one chord's set be narrowed to the
colors already present on the rest of the walk.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .colorset import ColorSet


class GadgetError(ValueError):
    pass


class NotClosedError(GadgetError):
    pass


class RepeatedVertexError(GadgetError):
    pass


class PreconditionViolated(GadgetError):
    def __init__(self, msg, pair=None):
        super().__init__(msg)
        self.pair = pair


@dataclass(frozen=True)
class AmbientRing:
    M: int

    def __post_init__(self):
        if self.M < 3:
            raise GadgetError("ambient cycle needs M >= 3")

    def edge(self, u: int, v: int) -> "Chord":
        return Chord.canonical(self.M, u, v)

    @cached_property
    def perimeter_colors(self) -> tuple[ColorSet, ...]:
        return tuple(ColorSet.single(self.M, i) for i in range(self.M))


@dataclass(frozen=True, order=True)
class Chord:
    """Edge (base, base + length) with 1 <= length <= M/2; length 1 is a perimeter edge."""

    base: int
    length: int

    @staticmethod
    def canonical(M: int, u: int, v: int) -> "Chord":
        u %= M
        v %= M
        if u == v:
            raise GadgetError("loop edge")
        d = (v - u) % M
        if 2 * d < M:
            return Chord(u, d)
        if 2 * d > M:
            return Chord(v, M - d)
        return Chord(min(u, v), d)

    @property
    def is_perimeter(self) -> bool:
        return self.length == 1

    def endpoints(self, M: int) -> tuple[int, int]:
        return self.base, (self.base + self.length) % M


@dataclass(frozen=True)
class Contradiction:
    """An edge whose allowed set became empty."""

    edge: Chord
    reason: str = ""

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class ConstraintStore:
    ring: AmbientRing
    sets: Mapping[Chord, ColorSet] = field(default_factory=dict)

    @classmethod
    def fresh(cls, M: int) -> "ConstraintStore":
        return cls(AmbientRing(M), {})

    @property
    def M(self) -> int:
        return self.ring.M

    def allowed(self, edge) -> ColorSet:
        M = self.M
        chord = edge if isinstance(edge, Chord) else Chord.canonical(M, *edge)
        if chord.is_perimeter:
            return self.ring.perimeter_colors[chord.base]
        got = self.sets.get(chord)
        return got if got is not None else ColorSet.full(M)

    def refined(self, updates: Mapping[Chord, ColorSet]) -> "ConstraintStore":
        """New store with each update intersected into the current set."""
        new = dict(self.sets)
        for chord, s in updates.items():
            if chord.is_perimeter:
                raise GadgetError("perimeter colors are fixed")
            cur = new.get(chord)
            s = s if cur is None else cur & s
            if not s:
                raise GadgetError(f"empty allowed set for {chord}")
            new[chord] = s
        return ConstraintStore(self.ring, new)

    def replaced(self, updates: Mapping[Chord, ColorSet]) -> "ConstraintStore":
        """New store with the given sets installed verbatim."""
        new = dict(self.sets)
        for chord, s in updates.items():
            if not s:
                raise GadgetError(f"empty allowed set for {chord}")
            new[chord] = s
        return ConstraintStore(self.ring, new)

    def without(self, chords: Iterable[Chord]) -> "ConstraintStore":
        drop = set(chords)
        return ConstraintStore(self.ring, {c: s for c, s in self.sets.items() if c not in drop})

    def __eq__(self, other) -> bool:
        return (isinstance(other, ConstraintStore) and self.ring == other.ring
                and dict(self.sets) == dict(other.sets))

    def __hash__(self):
        return hash((self.ring, frozenset(self.sets.items())))


@dataclass(frozen=True)
class Walk:
    ring: AmbientRing
    vertices: tuple[int, ...]
    steps: tuple[int, ...]

    @property
    def M(self) -> int:
        return self.ring.M

    def __len__(self) -> int:
        return len(self.vertices)

    @cached_property
    def _edges(self) -> tuple[Chord, ...]:
        M = self.M
        vs = self.vertices
        return tuple(Chord.canonical(M, vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))

    def edges(self) -> list[Chord]:
        return list(self._edges)

    def rotated(self, k: int) -> "Walk":
        M = self.M
        return Walk(self.ring, tuple((v + k) % M for v in self.vertices), self.steps)

    def reflected(self, c: int) -> "Walk":
        M = self.M
        return Walk(self.ring, tuple((c - v) % M for v in self.vertices),
                    tuple(-s for s in self.steps))

    def edge_set(self) -> frozenset[Chord]:
        return frozenset(self._edges)


def walk_from_steps(M: int, start: int, steps: Sequence[int]) -> Walk:
    if len(steps) < 3:
        raise GadgetError("a cycle needs at least 3 edges")
    if sum(steps) % M:
        raise NotClosedError(f"steps sum to {sum(steps)}, not a multiple of {M}")
    vs = [start % M]
    for s in steps[:-1]:
        vs.append((vs[-1] + s) % M)
    seen = set()
    for i, v in enumerate(vs):
        if v in seen:
            raise RepeatedVertexError(f"vertex {v} repeated at position {i}")
        seen.add(v)
    if any(s % M == 0 for s in steps):
        raise RepeatedVertexError("zero-length step")
    return Walk(AmbientRing(M), tuple(vs), tuple(steps))


def walk_from_vertices(M: int, vertices: Sequence[int]) -> Walk:
    """Walk through the given vertices; steps are taken as forward lengths in [1, M)."""
    vs = [v % M for v in vertices]
    if len(vs) > 1 and vs[-1] == vs[0]:
        vs = vs[:-1]
    steps = [(vs[(i + 1) % len(vs)] - vs[i]) % M for i in range(len(vs))]
    return walk_from_steps(M, vs[0], steps)


def allowed(store: ConstraintStore, edge) -> ColorSet:
    return store.allowed(edge)


def _edge_sets(walk: Walk, store: ConstraintStore) -> tuple[list[Chord], list[ColorSet]]:
    if walk.M != store.M:
        raise GadgetError("walk and store live on different rings")
    edges = walk.edges()
    return edges, [store.allowed(e) for e in edges]


def _target_index(walk: Walk, target) -> int:
    if isinstance(target, int):
        return target % len(walk)
    chord = target if isinstance(target, Chord) else Chord.canonical(walk.M, *target)
    edges = walk.edges()
    if chord not in edges:
        raise GadgetError(f"{chord} is not an edge of the walk")
    return edges.index(chord)


def cycle_restriction(walk: Walk, target, store: ConstraintStore) -> ColorSet:
    """Union of the allowed sets of the non-target edges (they must be pairwise disjoint)."""
    idx = _target_index(walk, target)
    edges, sets = _edge_sets(walk, store)
    others = sets[:idx] + sets[idx + 1:]
    clash = ColorSet.first_overlap(others)
    if clash is not None:
        i, j = (k if k < idx else k + 1 for k in clash)
        raise PreconditionViolated(
            f"edges {edges[i]} and {edges[j]} may share a color", (edges[i], edges[j]))
    return ColorSet.union_all(walk.M, others)


def propagate(walk: Walk, target, store: ConstraintStore):
    """Narrow ``target`` to colors already on the walk; the store is not modified.

    Returns the refined ColorSet, or a Contradiction if nothing is left.
    """
    idx = _target_index(walk, target)
    chord = walk.edges()[idx]
    got = store.allowed(chord) & cycle_restriction(walk, idx, store)
    if not got:
        return Contradiction(chord, "non-rainbow walk leaves no color")
    return got


def disjunction(walk: Walk, store: ConstraintStore) -> dict[Chord, ColorSet]:
    """Branches forced by non-rainbowness: some listed edge takes a color in its set.

    Each chord's branch set is its allowed set intersected with the union of
    all other edges' sets; chords with an empty branch set are omitted.
    Perimeter edges of a walk are distinct, so two of them never collide.
    """
    edges, sets = _edge_sets(walk, store)
    out = {}
    for k, (e, s) in enumerate(zip(edges, sets)):
        if e.is_perimeter:
            continue
        rest = ColorSet.union_all(walk.M, sets[:k] + sets[k + 1:])
        got = s & rest
        if got:
            out[e] = got
    return out


@dataclass(frozen=True)
class ContradictionCertificate:
    walk: Walk
    sets: tuple[ColorSet, ...]


@dataclass(frozen=True)
class NotForced:
    pair: tuple[Chord, Chord]

    def __bool__(self) -> bool:
        return False


def forced_rainbow(walk: Walk, store: ConstraintStore):
    """Certificate if every consistent coloring makes ``walk`` rainbow."""
    edges, sets = _edge_sets(walk, store)
    clash = ColorSet.first_overlap(sets)
    if clash is None:
        return ContradictionCertificate(walk, tuple(sets))
    i, j = clash
    return NotForced((edges[i], edges[j]))


def map_vertex(M: int, v: int, rotation: int, reflect: bool) -> int:
    return ((-v if reflect else v) + rotation) % M


def map_edge(M: int, chord: Chord, rotation: int, reflect: bool) -> Chord:
    u, v = chord.endpoints(M)
    return Chord.canonical(M, map_vertex(M, u, rotation, reflect), map_vertex(M, v, rotation, reflect))


def map_colors(s: ColorSet, rotation: int, reflect: bool) -> ColorSet:
    # perimeter edge (i, i+1) goes to (r-i-1, r-i) under reflection
    return s.reflected(rotation - 1) if reflect else s.shifted(rotation)


def apply_symmetry(store: ConstraintStore, rotation: int, reflect: bool = False) -> ConstraintStore:
    """Relabel vertices by v -> (+-v) + rotation, with the induced color map."""
    M = store.M
    return ConstraintStore(store.ring, {
        map_edge(M, c, rotation, reflect): map_colors(s, rotation, reflect)
        for c, s in store.sets.items()})


def map_walk(walk: Walk, rotation: int, reflect: bool = False) -> Walk:
    w = walk.reflected(0) if reflect else walk
    return w.rotated(rotation)
