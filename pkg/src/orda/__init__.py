"""Ordered automata: canonical minimization, language classes, omega-inequalities.

The working objects are deterministic automata whose state set carries a
compatible partial order.  Minimization produces the unique smallest such
automaton for a language (states = left quotients, order = inclusion);
classification and the inequality checks run on top of it and of the
transition monoid.
"""

from .classify import (
    ClassificationReport,
    Verdict,
    classify_language,
    has_extensive_actions,
    has_n_extensive_actions,
    is_acyclic,
    is_autonomous,
    is_confluent,
    is_counter_free,
    is_cycle_union_dividing,
    is_pt_semiautomaton,
    is_strongly_acyclic,
    is_synchronizing,
    is_weakly_confluent,
    main_follower,
)
from .core import (
    Alphabet,
    OrderedAutomaton,
    OrderedSemiautomaton,
    Semiautomaton,
    StateOrder,
    accepts,
    format_automaton,
    parse_automaton,
    step,
    validate,
)
from .errors import (
    AlphabetError,
    CompatibilityError,
    OrdaError,
    ParseError,
    ResourceError,
)
from .languages import (
    Regex,
    brzozowski_minimize,
    canonical_ordered_automaton,
    derivative,
    derivative_automaton,
    enumerate_words,
    finite_language_regex,
    format_regex,
    language_inclusion,
    parse_regex,
    regex_matches,
    to_regex,
    word_regex,
)
from .minimize import (
    isomorphic,
    isomorphism,
    minimize_ordered,
    minimize_with_map,
    preorder,
)
from .monoid import (
    TransitionMonoid,
    build,
    is_aperiodic,
    is_j_trivial,
    is_r_trivial,
    omega_power,
)
from .omega import (
    OmegaQuery,
    check,
    check_identity_catalog,
    parse_query,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "AlphabetError",
    "ClassificationReport",
    "CompatibilityError",
    "OmegaQuery",
    "OrdaError",
    "OrderedAutomaton",
    "OrderedSemiautomaton",
    "ParseError",
    "Regex",
    "ResourceError",
    "Semiautomaton",
    "StateOrder",
    "TransitionMonoid",
    "Verdict",
    "accepts",
    "brzozowski_minimize",
    "build",
    "canonical_ordered_automaton",
    "check",
    "check_identity_catalog",
    "classify_language",
    "derivative",
    "derivative_automaton",
    "enumerate_words",
    "finite_language_regex",
    "format_automaton",
    "format_regex",
    "has_extensive_actions",
    "has_n_extensive_actions",
    "is_acyclic",
    "is_aperiodic",
    "is_autonomous",
    "is_confluent",
    "is_counter_free",
    "is_cycle_union_dividing",
    "is_j_trivial",
    "is_pt_semiautomaton",
    "is_r_trivial",
    "is_strongly_acyclic",
    "is_synchronizing",
    "is_weakly_confluent",
    "isomorphic",
    "isomorphism",
    "language_inclusion",
    "main_follower",
    "minimize_ordered",
    "minimize_with_map",
    "omega_power",
    "parse_automaton",
    "parse_query",
    "parse_regex",
    "preorder",
    "regex_matches",
    "step",
    "to_regex",
    "validate",
    "word_regex",
]
