"""Executable decidability: definitive words, realizability deciders, and
reductions between language-membership and prefix problems.

The package answers questions of the shape "does the language of this
automaton contain a prefix of that computable infinite word?" — exactly,
with evidence — whenever the word is factor-universal, and builds the
machinery that transports those answers to Büchi acceptance, to automata
over a countable alphabet, and to non-emptiness of language intersections.
"""

from .automata import (
    Alphabet,
    AlphabetMismatchError,
    Automaton,
    Dfa,
    EPSILON,
    Nfa,
    Word,
    as_word,
    complement,
    concatenate,
    dead_lock_states,
    determinize,
    difference,
    empty_language,
    equivalent,
    intersect,
    is_empty,
    literal_dfa,
    reachable_states,
    regex_dfa,
    relabel_bfs,
    render_word,
    shortlex_smallest,
    sigma_star,
    sigma_star_prefix,
    star,
    union,
    with_initial,
    words_upto,
)
from .bridge import (
    Block,
    FilterLanguage,
    MachineList,
    Stage,
    Theorem1Word,
    block_word_dfa,
    canonical_state_count_block,
    decode_dfa,
    decide_prefix_theorem1,
    encode_dfa,
    filter_to_word,
    parse_machines,
    prefix_via_rr,
    rr_pipeline,
    rr_to_prefix,
    split_blocks,
    theorem1_word,
)
from .decide import (
    Fuel,
    FuelExhausted,
    NO,
    Outcome,
    Verdict,
    YES,
    brute_force_prefix_check,
    count_accepted_prefixes,
    deadlock_accepting_variant,
    decide_buchi,
    decide_prefix,
)
from .definitive import (
    DefinitiveCertificate,
    EndedDeadLock,
    PassedAccepting,
    Refutation,
    definitive_language,
    definitive_witness,
    find_definitive_word,
    is_definitive,
)
from .effective import (
    AugmentedState,
    EffectiveAutomaton,
    EffectiveFormatError,
    IndexSet,
    decide_buchi_infinite,
    decide_buchi_morphism,
    decide_prefix_infinite,
    decide_prefix_morphism,
    definitive_index_sequence,
    delta_relation,
    derived_fuel,
    effective_dead_locks,
    effective_from_index_sets,
    find_transition_witness,
    parse_effective,
    reachable_closure,
    reduce_morphism_automaton,
    zero_one_blocks,
    zero_one_runs,
)
from .omega import (
    MullerAutomaton,
    absorbing_accepting,
    buchi_accepts_ultper,
    limit_set_ultper,
    macrostate_automaton,
    muller_acceptance_via_buchi_queries,
    muller_accepts_ultper,
    prepend_sigma_star,
)
from .textio import (
    FormatError,
    parse_dfa,
    parse_muller,
    parse_nfa,
    serialize_dfa,
    serialize_muller,
    serialize_nfa,
)
from .words import (
    EffectiveMorphism,
    FACTOR_UNIVERSAL,
    IndexedInfiniteWord,
    InfiniteWord,
    MorphismStallError,
    UNKNOWN,
    apply_morphism,
    champernowne,
    factor_search,
    indexed_factor_search,
    indexed_periodic,
    ultimately_periodic,
    universal_indexed_word,
    universal_round_end,
    universal_round_length,
)

__version__ = "0.1.0"
