"""magmakit: free magmas, finitely presented equidecomposable magmas, and
decision procedures for them (reduction to E-form, word problem, isomorphism,
equation solving) plus concrete model magmas used as oracles."""

from magmakit.terms import (
    Alphabet,
    Term,
    TermSyntaxError,
    CYCLIC,
    parse_term,
    format_term,
    length,
    n_minus,
    n_plus,
    substitute,
    magma_product,
    generate_bounded,
    submagma_contains,
    minimal_generators,
    pair_generators_check,
    pair_split,
)
from magmakit.presentation import (
    EForm,
    Presentation,
    alpha_measure,
    beta_measure,
    cyclic,
    free_product,
    parse_eform,
    parse_presentation,
    reduce_presentation,
    render_eform,
    render_presentation,
)
from magmakit.congruence import (
    PairSet,
    RewriteSystem,
    SaturationCapExceeded,
    Undecided,
    build_rewrite_system,
    classes_bounded,
    is_closed_bounded,
    kernel_name,
    normalize,
    saturate_bounded,
    solve_equation,
    word_equal,
)
from magmakit.structure import (
    SearchTooLarge,
    conjugate,
    is_free,
    is_full,
    isomorphic,
    jonsson_tarski,
    mirror,
    mirror_eform,
    split,
)

__version__ = "0.1.0"
