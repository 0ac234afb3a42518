"""Rainbow-cycle spectra of complete edge-colored graphs.

Submodules: ``semigroup`` (numerical semigroup arithmetic), ``spectrum``
(rule closure for spec(G)), ``colorset`` / ``gadget`` / ``lemmas``
(chord-color propagation), ``search`` (witness cycles), ``cli``.
"""

from .colorset import ColorSet
from .gadget import (
    AmbientRing,
    Chord,
    ConstraintStore,
    Contradiction,
    Walk,
    allowed,
    apply_symmetry,
    forced_rainbow,
    propagate,
    walk_from_steps,
)
from .lemmas import lemma_div4_chain, lemma_even_chain
from .search import (
    backtrack_search,
    check_inequalities_div4,
    construct_div4,
    construct_even,
    div4_family,
    div4_multiset,
    even_family,
    even_multiset,
    parse_compact,
    verify_cycle,
)
from .semigroup import (
    NumericalSemigroup,
    frobenius_pair,
    members_up_to,
    period,
    progression_conductor,
    prop_progression_start,
    scaled_progression,
)
from .spectrum import (
    implied_members,
    main_theorem_bound,
    monoid_op,
    period_class,
    verify_progression,
)

__version__ = "0.1.0"
