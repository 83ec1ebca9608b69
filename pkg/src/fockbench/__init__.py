"""Truncated bosonic Fock space: exact creators, annihilators, number operator,
permanents, and a series engine for the infinite-dimensional domain question."""

from .asymptotics import (
    COUNTEREXAMPLE_LAMBDA_SQ,
    ConvergenceVerdict,
    DomainReport,
    SeqSpec,
    SeqSpecSyntaxError,
    classify,
    counterexample_truncate,
    domain_report,
    parse_seq_spec,
    partial_sum,
    render,
    seq_scale,
    term_sup,
)
from .fock import (
    FockVector,
    OneParticleVector,
    Workspace,
    WorkspaceError,
    fock_from_json,
    fock_to_json,
    grade_project,
    inner,
    monomial_inner,
    norm_sq,
    tensor_to_occupation,
)
from .operators import (
    GradeOverflowError,
    OperatorReport,
    annihilate,
    ccr_report,
    check_adjoint,
    commutator,
    create,
    creator_bound_report,
    number,
    number_identity_report,
    number_sqrt_norm_sq,
    sum_create_annihilate,
    theorem2_identity_report,
)
from .permanent import (
    PermanentSizeError,
    gram_inner,
    permanent_naive,
    permanent_ryser,
)
from .scalars import EXACT, FLOAT, TAU, GaussianRational

__version__ = "0.1.0"
