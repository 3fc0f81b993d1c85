"""Solver and analysis toolkit for social abstract argumentation.

A framework couples arguments, an attack relation, and pro/con vote
counts. Under the product semantics every model is a simultaneous
solution of

    M(a) = tau(a) * prod(1 - M(b) for b attacking a)

and this package computes such models, enumerates all of them on a
framework (they need not be unique), certifies uniqueness where a
simple margin condition allows it, and quantifies what the support
normalization repair trades away.
"""

from .analysis import (
    IndependenceReport,
    UniquenessCertificate,
    certify_uniqueness,
    independence_experiment,
    normalized_solve,
    solve_three_clique,
)
from .cli import cli_main
from .enumeration import (
    EnumerationConfig,
    ModelSet,
    enumerate_models,
    format_ranking,
    grid_oracle,
    rankings_of,
)
from .errors import (
    DomainError,
    DomainViolation,
    DuplicateArgument,
    DuplicateVotes,
    InvariantBreach,
    NameCollision,
    NegativeCount,
    NonConvergence,
    SafSyntaxError,
    SingularJacobian,
    SocialArgError,
    TooLarge,
    UnknownArgument,
    UnknownEndpoint,
)
from .framework import (
    SocialFramework,
    VoteRecord,
    attackers_of,
    build_framework,
    connected_component,
    decompose,
    disjoint_union,
)
from .safio import (
    ResultEnvelope,
    SafDocument,
    SafStatement,
    document_of,
    emit_result,
    framework_of,
    parse_saf,
    serialize_saf,
)
from .semantics import (
    SemanticsConfig,
    WellBehavedReport,
    aggregate_attackers,
    check_well_behaved,
    evaluate_rhs,
    negation,
    residual,
    tau,
    tau_valuation,
    tau_vector,
    tconorm,
    tnorm,
)
from .solver import SolveOutcome, SolverConfig, jacobian, picard_step, solve

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "DomainViolation",
    "DuplicateArgument",
    "DuplicateVotes",
    "EnumerationConfig",
    "IndependenceReport",
    "InvariantBreach",
    "ModelSet",
    "NameCollision",
    "NegativeCount",
    "NonConvergence",
    "ResultEnvelope",
    "SafDocument",
    "SafStatement",
    "SafSyntaxError",
    "SemanticsConfig",
    "SingularJacobian",
    "SocialArgError",
    "SocialFramework",
    "SolveOutcome",
    "SolverConfig",
    "TooLarge",
    "UniquenessCertificate",
    "UnknownArgument",
    "UnknownEndpoint",
    "VoteRecord",
    "WellBehavedReport",
    "aggregate_attackers",
    "attackers_of",
    "build_framework",
    "certify_uniqueness",
    "check_well_behaved",
    "cli_main",
    "connected_component",
    "decompose",
    "disjoint_union",
    "document_of",
    "emit_result",
    "enumerate_models",
    "evaluate_rhs",
    "format_ranking",
    "framework_of",
    "grid_oracle",
    "independence_experiment",
    "jacobian",
    "negation",
    "normalized_solve",
    "parse_saf",
    "picard_step",
    "rankings_of",
    "residual",
    "serialize_saf",
    "solve",
    "solve_three_clique",
    "tau",
    "tau_valuation",
    "tau_vector",
    "tconorm",
    "tnorm",
]
