"""Exact duality computations for Z^(N) and finite abelian groups."""

from .cpx import (
    INF,
    ConvergentSequence,
    FiniteDiscrete,
    FreePoint,
    IntFunction,
    RealLift,
    extend_character,
    is_continuous,
    support_of_hom,
    theorem_b_reduce,
    theta_eval,
)
from .dualgrp import (
    ContinuitySubset,
    ElementaryTensor,
    InDual,
    NotInDual,
    TensorSum,
    annihilator_witness,
    char_equal,
    decide_membership,
    decompose,
    minimize_continuity_subset,
    tensor_eval,
    tensor_to_pointwise,
    verify_continuity_subset,
)
from .exact import IntMatrix, SnfResult, TorusValue, integer_kernel_basis, smith_normal_form, torus_combine
from .fgab import (
    Bicharacter,
    FGAbelianGroup,
    GroupHom,
    Subset,
    dual_group,
    garling_transpose,
    group_from_relations,
    hom_group,
    polar,
    prepolar,
    quasiconvex_hull,
    tensor_construct,
    verify_dual_of_tensor,
    verify_universal_property,
)
from .indexset import IndexSet
from .seq import (
    CharacterPresentation,
    FinSupportVector,
    IntSeq,
    RatSeq,
    char_eval,
    denominator_profile,
    pair,
    restrict_character,
    seq_eval,
)

__version__ = "0.1.0"
