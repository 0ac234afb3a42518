from itertools import product

import pytest
from hypothesis import assume, given, settings, strategies as st

from rainbow_spectra.colorset import ColorSet
from rainbow_spectra.gadget import (
    Chord,
    ConstraintStore,
    Contradiction,
    ContradictionCertificate,
    GadgetError,
    NotClosedError,
    NotForced,
    PreconditionViolated,
    RepeatedVertexError,
    allowed,
    apply_symmetry,
    cycle_restriction,
    disjunction,
    forced_rainbow,
    map_colors,
    map_edge,
    map_walk,
    propagate,
    walk_from_steps,
    walk_from_vertices,
)
from rainbow_spectra.lemmas import even_long_chords
from rainbow_spectra.search import CYCLE_12, even_family


def perimeter_walk(M, n, start=0):
    return walk_from_steps(M, start, [1] * (n - 1) + [M - (n - 1)])


# ---------------------------------------------------------------- chords and walks

def test_chord_canonical_form():
    assert Chord.canonical(10, 7, 2) == Chord(2, 5)
    assert Chord.canonical(10, 2, 7) == Chord(2, 5)
    assert Chord.canonical(10, 9, 0) == Chord(9, 1)
    assert Chord.canonical(10, 1, 8) == Chord(8, 3)
    assert Chord.canonical(10, 3, 4).is_perimeter
    with pytest.raises(GadgetError):
        Chord.canonical(10, 3, 13)


def test_walk_from_steps_examples():
    w = walk_from_steps(28, 0, [11, 1, 1, 1, 1, 1, 7, 7, 7, 11, 7, 1])
    assert w.vertices == CYCLE_12
    assert w.edges()[0] == Chord(0, 11)
    assert w.edges()[-1] == Chord(27, 1)
    assert walk_from_vertices(28, list(CYCLE_12) + [0]).steps == w.steps
    back = walk_from_steps(10, 0, [3, -1, 8])
    assert back.vertices == (0, 3, 2)


def test_walk_errors():
    with pytest.raises(NotClosedError):
        walk_from_steps(10, 0, [1, 2, 3])
    with pytest.raises(RepeatedVertexError):
        walk_from_steps(10, 0, [5, 5, 5, 5])
    with pytest.raises(GadgetError):
        walk_from_steps(10, 0, [5, 5])


# ---------------------------------------------------------------- allowed / propagate

def test_allowed_defaults():
    store = ConstraintStore.fresh(40)
    assert allowed(store, (3, 4)) == ColorSet.of(40, [3])
    assert allowed(store, (4, 3)) == ColorSet.of(40, [3])
    assert allowed(store, (39, 0)) == ColorSet.of(40, [39])
    assert allowed(store, (0, 9)) == ColorSet.full(40)
    store = store.refined({Chord(0, 9): ColorSet.arc(40, 0, 2)})
    assert allowed(store, (9, 0)) == ColorSet.of(40, [0, 1])


def test_store_refusals():
    store = ConstraintStore.fresh(20)
    with pytest.raises(GadgetError):
        store.refined({Chord(3, 1): ColorSet.of(20, [3])})
    store = store.refined({Chord(0, 5): ColorSet.of(20, [1])})
    with pytest.raises(GadgetError):
        store.refined({Chord(0, 5): ColorSet.of(20, [2])})


@pytest.mark.parametrize("n", [8, 12, 14, 20])
def test_perimeter_cycle_narrows_closing_chord(n):
    M = 3 * n - 8
    walk = perimeter_walk(M, n)
    got = propagate(walk, Chord(0, n - 1), ConstraintStore.fresh(M))
    assert got == ColorSet.span(M, 0, n - 2)
    # the store itself is untouched
    assert allowed(ConstraintStore.fresh(M), (0, n - 1)) == ColorSet.full(M)


def test_cycle_a_restriction_after_first_family():
    n, M = 14, 34
    _, store = even_long_chords(n)
    walk = walk_from_steps(M, 0, [n - 5, n - 1] + [1] * (n - 2))
    got = cycle_restriction(walk, Chord(0, n - 5), store)
    assert got == ColorSet.of(M, [9, 10] + list(range(22, 34)))


def test_precondition_violation_names_the_pair():
    store = ConstraintStore.fresh(20)
    walk = walk_from_steps(20, 0, [5, 5, 5, 1, 1, 1, 1, 1])
    with pytest.raises(PreconditionViolated) as exc:
        propagate(walk, 7, store)
    assert set(exc.value.pair) <= {Chord(0, 5), Chord(5, 5), Chord(10, 5)}


def test_contradiction_is_a_value():
    M = 12
    store = ConstraintStore.fresh(M).refined({Chord(0, 5): ColorSet.of(M, [10])})
    walk = walk_from_steps(M, 0, [1, 1, 1, 1, 1, 7])
    got = propagate(walk, Chord(0, 5), store)
    assert isinstance(got, Contradiction) and not got
    assert got.edge == Chord(0, 5)


def test_disjunction_lists_chords_only():
    n, M = 12, 28
    store = ConstraintStore.fresh(M)
    for i in range(M):
        store = store.refined({Chord(i, n - 1): ColorSet.span(M, i, i + n - 2)})
    walk = walk_from_steps(M, 0, [n - 1] + [1] * (n - 4) + [n - 1, -1, -1])
    d = disjunction(walk, store)
    both = ColorSet.of(M, [0, 1])
    assert d == {Chord(0, n - 1): both, Chord.canonical(M, 2, 2 * n - 5): both}
    assert all(not c.is_perimeter for c in d)


# ---------------------------------------------------------------- forced rainbow

def test_forced_rainbow_on_twelve_cycle():
    family = even_family(12)
    walk = walk_from_vertices(28, CYCLE_12)
    cert = forced_rainbow(walk, family.store)
    assert isinstance(cert, ContradictionCertificate)
    assert len(cert.sets) == 12
    loose = forced_rainbow(walk, ConstraintStore.fresh(28))
    assert isinstance(loose, NotForced) and not loose


def test_perimeter_cycle_is_always_rainbow():
    walk = perimeter_walk(9, 9)
    assert forced_rainbow(walk, ConstraintStore.fresh(9))


# ---------------------------------------------------------------- symmetry

def test_reflection_through_vertex_one():
    n = 14
    M = 3 * n - 8
    assert map_edge(M, Chord(0, n - 1), 2, True) == Chord.canonical(M, 2, 2 * n - 5)
    assert map_colors(ColorSet.of(M, [0, 1]), 2, True) == ColorSet.of(M, [0, 1])


@st.composite
def small_stores(draw):
    M = draw(st.integers(5, 16))
    sets = {}
    for _ in range(draw(st.integers(0, 8))):
        u = draw(st.integers(0, M - 1))
        L = draw(st.integers(2, M // 2))
        arcs = draw(st.lists(st.tuples(st.integers(0, M - 1), st.integers(1, 3)), min_size=1, max_size=2))
        sets[Chord.canonical(M, u, u + L)] = ColorSet(M, arcs)
    return ConstraintStore.fresh(M).replaced(sets)


@st.composite
def small_walks(draw, M):
    k = draw(st.integers(3, min(5, M)))
    vs = draw(st.permutations(range(M)))[:k]
    return walk_from_vertices(M, vs)


@settings(max_examples=150, deadline=None)
@given(small_stores(), st.integers(-40, 40), st.integers(-40, 40), st.booleans())
def test_symmetry_group_laws(store, a, b, reflect):
    M = store.M
    assert apply_symmetry(store, M) == store
    assert apply_symmetry(apply_symmetry(store, a), b) == apply_symmetry(store, a + b)
    assert apply_symmetry(apply_symmetry(store, a, True), a, True) == store
    # perimeter colors are respected: edge (i, i+1) keeps color i after relabeling
    for i in range(M):
        e = map_edge(M, Chord(i, 1), a, reflect)
        assert map_colors(ColorSet.of(M, [i]), a, reflect) == ColorSet.of(M, [e.base])


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_symmetry_commutes_with_engine(data):
    store = data.draw(small_stores())
    M = store.M
    walk = data.draw(small_walks(M))
    r = data.draw(st.integers(0, M - 1))
    reflect = data.draw(st.booleans())
    img_store = apply_symmetry(store, r, reflect)
    img_walk = map_walk(walk, r, reflect)
    assert bool(forced_rainbow(walk, store)) == bool(forced_rainbow(img_walk, img_store))
    target = walk.edges()[0]
    try:
        got = propagate(walk, target, store)
    except PreconditionViolated:
        with pytest.raises(PreconditionViolated):
            propagate(img_walk, map_edge(M, target, r, reflect), img_store)
        return
    img = propagate(img_walk, map_edge(M, target, r, reflect), img_store)
    if isinstance(got, Contradiction):
        assert isinstance(img, Contradiction)
    else:
        assert img == map_colors(got, r, reflect)


# ---------------------------------------------------------------- soundness by enumeration

def colorings(walk, store):
    edges = walk.edges()
    choices = [list(store.allowed(e)) for e in edges]
    for combo in product(*choices):
        yield edges, combo


@settings(max_examples=120, deadline=None)
@given(st.data())
def test_propagate_is_exact_against_enumeration(data):
    store = data.draw(small_stores())
    M = store.M
    assume(M <= 11)
    walk = data.draw(small_walks(M))
    idx = data.draw(st.integers(0, len(walk) - 1))
    target = walk.edges()[idx]
    others = [store.allowed(e) for k, e in enumerate(walk.edges()) if k != idx]
    disjoint = ColorSet.first_overlap(others) is None
    if not disjoint:
        with pytest.raises(PreconditionViolated):
            propagate(walk, idx, store)
        return
    feasible = set()
    for edges, combo in colorings(walk, store):
        if len(set(combo)) < len(combo):
            feasible.add(combo[idx])
    got = propagate(walk, idx, store)
    if not feasible:
        assert isinstance(got, Contradiction)
    else:
        assert set(got) == feasible
        # idempotent once installed
        if not target.is_perimeter:
            again = propagate(walk, idx, store.replaced({target: got}))
            assert again == got


@settings(max_examples=120, deadline=None)
@given(st.data())
def test_forced_rainbow_is_exact_against_enumeration(data):
    store = data.draw(small_stores())
    M = store.M
    assume(M <= 11)
    walk = data.draw(small_walks(M))
    every_rainbow = all(len(set(c)) == len(c) for _, c in colorings(walk, store))
    assert bool(forced_rainbow(walk, store)) == every_rainbow
