"""Homomorphism counts from knot groups to finite groups, and finite-type tests on them."""

from .braids import (
    BraidWord,
    CrossingSelection,
    closure_permutation,
    is_knot,
    markov_conjugate,
    markov_stabilize,
    switch_crossings,
    torus_braid,
)
from .config import Caps
from .families import make_family, named_subset
from .groups import (
    ConjSubset,
    GroupTable,
    Subgroup,
    commutator_subgroup,
    conj_closure,
    generated_subgroup,
    group_from_table,
    quotient_is_cyclic,
)
from .invariant import (
    CountReport,
    braid_act,
    count_by_trace,
    count_by_wirtinger,
    image_abelianization_check,
    r_apply,
    r_apply_inv,
    torus_pair_count,
)
from .vassiliev import (
    FiniteTypeVerdict,
    StarWitness,
    TorusProfile,
    finite_differences,
    finite_type_sum,
    is_polynomial_of_degree_at_most,
    star_search,
    torus_profile,
    verify_claim,
)

__version__ = "0.1.0"

__all__ = [
    "BraidWord",
    "Caps",
    "ConjSubset",
    "CountReport",
    "CrossingSelection",
    "FiniteTypeVerdict",
    "GroupTable",
    "StarWitness",
    "Subgroup",
    "TorusProfile",
    "braid_act",
    "closure_permutation",
    "commutator_subgroup",
    "conj_closure",
    "count_by_trace",
    "count_by_wirtinger",
    "finite_differences",
    "finite_type_sum",
    "generated_subgroup",
    "group_from_table",
    "image_abelianization_check",
    "is_knot",
    "is_polynomial_of_degree_at_most",
    "make_family",
    "markov_conjugate",
    "markov_stabilize",
    "named_subset",
    "quotient_is_cyclic",
    "r_apply",
    "r_apply_inv",
    "star_search",
    "switch_crossings",
    "torus_braid",
    "torus_pair_count",
    "torus_profile",
    "verify_claim",
]
