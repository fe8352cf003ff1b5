"""Nested words, visibly pushdown automata, and group word problems."""

from .words import (
    MatchingRelation,
    NestedWord,
    Tag,
    TaggedSymbol,
    concat,
    decode,
    encode,
    forget,
    format_word,
    parse_word,
    prefix,
    reverse,
    validate_matching,
)
from .machines import (
    Configuration,
    Fsa,
    Nfa,
    Nvpa,
    Pda,
    Vpa,
    canonicalize,
    fsa_determinize,
    fsa_run,
    nvpa_run,
    pda_run,
    pda_step,
    vpa_complete,
    vpa_normalize_acceptance,
    vpa_run,
)
from .closures import (
    PrefixDecider,
    Relabeling,
    relabel_image,
    shuffle,
    vpl_complement,
    vpl_concat,
    vpl_intersection,
    vpl_prefix_member,
    vpl_reverse,
    vpl_star,
    vpl_union,
)
from .groups import (
    FiniteGroupSpec,
    FreeGroupSpec,
    GroupAlphabet,
    Recognizer,
    build_direct_product,
    build_finite_fsa,
    build_free_vpa,
    build_recognizer,
    build_semidirect,
    canonical_matching,
    enumerate_taggings,
    eval_direct,
    eval_semidirect,
    free_reduce,
    psi_action,
)

__version__ = "0.1.0"
