"""Exact partial dynamical systems, their dense crossed-product algebras, and
paradoxicality witnesses."""

from .action import NAdicSystem, PartialSystem, PathSystem, ResidueSystem, alpha_pullback, apply, domain, separating_cell
from .crossprod import (
    AlgElem,
    a_add,
    a_equals,
    a_mul,
    a_scale,
    a_star,
    expectation,
    is_projection,
    l1_norm,
    standard_generators,
    sup_norm,
)
from .errors import PcxError
from .functions import LCFunction
from .graphs import (
    condition_K,
    every_cycle_has_exit,
    graph_report,
    hereditary_saturated_sets,
    invariant_clopen_sets,
    topfree_bruteforce,
)
from .groups import AffineElem, FreeWord, NAdicElem, g_inv, g_mul, positive_negative_split, word_length
from .paradox import (
    ParadoxWitness,
    find_witness,
    verify_proper_infinite,
    verify_witness,
    witness_to_isometries,
)
from .space import (
    AdjacencyMatrix,
    ClopenSet,
    NAdicCell,
    NAdicSpace,
    PathCell,
    PathSpace,
    ResidueCell,
    ResidueSpace,
    canonicalize,
    complement,
    equals,
    intersect,
    is_empty,
    is_subset,
    refine,
    union,
)

__all__ = [
    "a_add",
    "a_equals",
    "a_mul",
    "a_scale",
    "a_star",
    "AdjacencyMatrix",
    "AffineElem",
    "AlgElem",
    "alpha_pullback",
    "apply",
    "canonicalize",
    "ClopenSet",
    "complement",
    "condition_K",
    "domain",
    "equals",
    "every_cycle_has_exit",
    "expectation",
    "find_witness",
    "FreeWord",
    "g_inv",
    "g_mul",
    "graph_report",
    "hereditary_saturated_sets",
    "intersect",
    "invariant_clopen_sets",
    "is_empty",
    "is_projection",
    "is_subset",
    "l1_norm",
    "LCFunction",
    "NAdicCell",
    "NAdicElem",
    "NAdicSpace",
    "NAdicSystem",
    "ParadoxWitness",
    "PartialSystem",
    "PathCell",
    "PathSpace",
    "PathSystem",
    "PcxError",
    "positive_negative_split",
    "refine",
    "ResidueCell",
    "ResidueSpace",
    "ResidueSystem",
    "separating_cell",
    "standard_generators",
    "sup_norm",
    "topfree_bruteforce",
    "union",
    "verify_proper_infinite",
    "verify_witness",
    "witness_to_isometries",
    "word_length",
]
