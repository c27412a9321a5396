"""Exact combinatorics of permutation orbifolds.

Permutation branched coverings of pointed spheres built from monodromy
permutations, their component genera, and dimensions of permutation-twisted
conformal blocks computed from a fusion ring.
"""

from .covering import build_covering, export_dot, lift_word
from .errors import (
    BadGeneratorIndex,
    BadLabel,
    BadMarkedChoice,
    BadWeightDenominator,
    CombinatorialBlowup,
    EmptyData,
    GroundMismatch,
    IncompleteAssignment,
    InsufficientTruncation,
    InternalConsistencyError,
    InvalidRing,
    MalformedSyntax,
    NoRemainingPoints,
    NotAdmissible,
    ParseError,
    PermorbError,
    RepeatedElement,
    SchemaError,
    SewPairNotInverse,
    UnknownElement,
)
from .fusion import FusionRing, block_dim, fusion_table, validate_ring
from .monodromy import (
    MarkedPoint,
    MonodromyData,
    OrbitRef,
    build_monodromy,
    check_admissible,
    conjugate,
    rebase,
    rotate,
)
from .perm import IndexSet, Permutation, compose, eval_word, format_cycles, orbits, parse_cycles, word
from .sewing import SewSpec, covering_commutes, factorization_check, sew
from .twisted import (
    contragredient_assignment,
    twisted_block_dim,
    twisted_fusion_table,
    twisted_graded_dims,
)

__version__ = "0.1.0"

__all__ = [
    "FusionRing",
    "IndexSet",
    "MarkedPoint",
    "MonodromyData",
    "OrbitRef",
    "Permutation",
    "SewSpec",
    "block_dim",
    "build_covering",
    "build_monodromy",
    "check_admissible",
    "compose",
    "conjugate",
    "contragredient_assignment",
    "covering_commutes",
    "eval_word",
    "export_dot",
    "factorization_check",
    "format_cycles",
    "fusion_table",
    "lift_word",
    "orbits",
    "parse_cycles",
    "rebase",
    "rotate",
    "sew",
    "twisted_block_dim",
    "twisted_fusion_table",
    "twisted_graded_dims",
    "validate_ring",
    "word",
    "BadGeneratorIndex",
    "BadLabel",
    "BadMarkedChoice",
    "BadWeightDenominator",
    "CombinatorialBlowup",
    "EmptyData",
    "GroundMismatch",
    "IncompleteAssignment",
    "InsufficientTruncation",
    "InternalConsistencyError",
    "InvalidRing",
    "MalformedSyntax",
    "NoRemainingPoints",
    "NotAdmissible",
    "ParseError",
    "PermorbError",
    "RepeatedElement",
    "SchemaError",
    "SewPairNotInverse",
    "UnknownElement",
]
