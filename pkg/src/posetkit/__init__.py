"""Verification toolkit for finite bounded posets with antitone involution.

Builds posets from Hasse data, horizontal sums, and block diagrams,
computes Dedekind-MacNeille completions, checks structural properties
(Boolean, orthomodular, pseudo-orthomodular, strong D-continuity, the
Finch criterion), and verifies operator residuation laws.
"""

__version__ = "0.1.0"

from .build import (
    GreechieDiagram,
    dm_hsum_isomorphism,
    generate_small,
    greechie_to_omp,
    horizontal_sum,
    induced_subposet,
    min_loop_order,
    validate_greechie,
)
from .checks import (
    CheckContext,
    PROPERTIES,
    doubly_dense_subsets,
    finch_criterion,
    is_boolean_poset,
    is_complement_closed_doubly_dense,
    is_distributive_poset,
    is_modular_lattice,
    is_orthomodular_lattice,
    is_orthomodular_poset,
    is_pseudo_orthomodular,
    is_strongly_d_continuous,
    naive_strongly_d_continuous,
    run_check,
)
from .completion import (
    DEFAULT_MAX_CLOSED_SETS,
    DMLattice,
    check_join_meet_density,
    closure,
    complete,
    induced_involution,
)
from .errors import (
    CorpusError,
    CycleError,
    InvalidDiagram,
    MissingBounds,
    MissingInvolution,
    NoRelativePseudocomplement,
    NotAFunction,
    NotALattice,
    NotComplementClosed,
    NotComplemented,
    ParseError,
    PosetError,
    SizeLimitExceeded,
    UnboundedPart,
)
from .formats import (
    PosetDocument,
    export_dot,
    parse_greechie,
    parse_poset,
    parse_poset_document,
    serialize_greechie,
    serialize_poset,
)
from .poset import (
    FinitePoset,
    build_poset,
    is_antitone_involution,
    is_complementation,
    is_lattice,
    labeled_equal,
    structural_profile,
)
from .report import CheckReport
from .residuation import (
    KINDS,
    OperatorPair,
    ResiduatedOps,
    bdm_transform,
    operator_pair,
    pseudocomplement_table,
    relative_pseudocomplement,
    star_on_dm,
    verify_left_residuated_lattice,
    verify_operator_left_residuation,
)

__all__ = [
    "CheckContext",
    "CheckReport",
    "CorpusError",
    "CycleError",
    "DEFAULT_MAX_CLOSED_SETS",
    "DMLattice",
    "FinitePoset",
    "GreechieDiagram",
    "InvalidDiagram",
    "KINDS",
    "MissingBounds",
    "MissingInvolution",
    "NoRelativePseudocomplement",
    "NotAFunction",
    "NotALattice",
    "NotComplementClosed",
    "NotComplemented",
    "OperatorPair",
    "PROPERTIES",
    "ParseError",
    "PosetDocument",
    "PosetError",
    "ResiduatedOps",
    "SizeLimitExceeded",
    "UnboundedPart",
    "bdm_transform",
    "build_poset",
    "check_join_meet_density",
    "closure",
    "complete",
    "dm_hsum_isomorphism",
    "doubly_dense_subsets",
    "export_dot",
    "finch_criterion",
    "generate_small",
    "greechie_to_omp",
    "horizontal_sum",
    "induced_involution",
    "induced_subposet",
    "is_antitone_involution",
    "is_boolean_poset",
    "is_complement_closed_doubly_dense",
    "is_complementation",
    "is_distributive_poset",
    "is_lattice",
    "is_modular_lattice",
    "is_orthomodular_lattice",
    "is_orthomodular_poset",
    "is_pseudo_orthomodular",
    "is_strongly_d_continuous",
    "labeled_equal",
    "min_loop_order",
    "naive_strongly_d_continuous",
    "operator_pair",
    "parse_greechie",
    "parse_poset",
    "parse_poset_document",
    "pseudocomplement_table",
    "relative_pseudocomplement",
    "run_check",
    "serialize_greechie",
    "serialize_poset",
    "star_on_dm",
    "structural_profile",
    "validate_greechie",
    "verify_left_residuated_lattice",
    "verify_operator_left_residuation",
]
