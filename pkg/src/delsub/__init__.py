"""Error-ball combinatorics and sequence reconstruction for the q-ary
single-deletion single-substitution channel.

The package has four layers: q-ary word primitives (:mod:`.sequence`),
brute-force ball materialization used as the testing oracle
(:mod:`.balls`), the mismatch structure and structural intersection
computation (:mod:`.diffs`, :mod:`.intersect`), and the operational
channel/decoder layer (:mod:`.reconstruct`).  ``delsub.cli`` exposes all
of it as a command line tool.
"""

from .sequence import (
    Alphabet,
    RunDecomposition,
    Sequence,
    alternating,
    delete,
    hamming,
    levenshtein,
    phi,
    runs,
)
from .balls import (
    BallSpec,
    BudgetExceededError,
    DEFAULT_BUDGET,
    SequenceSet,
    ball_intersection,
    deletion_ball,
    ds_ball,
    sub_intersection_size,
    substitution_ball,
    substitution_ball_size,
)
from .diffs import (
    DiffProfile,
    LambdaDecomposition,
    LambdaEntry,
    Landmarks,
    deleted_hamming,
    diff_profile,
    lambda_enumerate,
    landmarks,
)
from .intersect import (
    CheckResult,
    IntersectionReport,
    OmegaGroup,
    VerificationReport,
    bound_applicable,
    claims_lambda,
    constant_regime_bound,
    coverage_bound,
    extremal_pair,
    intersection_size_fast,
    min_valid_length,
    omega_groups,
    verify_claims,
)
from .reconstruct import (
    Codebook,
    CoverageReport,
    ReadSet,
    ReconResult,
    ball_membership,
    channel_transmit,
    read_coverage,
    reconstruct,
    required_reads,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "BallSpec",
    "BudgetExceededError",
    "CheckResult",
    "Codebook",
    "CoverageReport",
    "DEFAULT_BUDGET",
    "DiffProfile",
    "IntersectionReport",
    "LambdaDecomposition",
    "LambdaEntry",
    "Landmarks",
    "OmegaGroup",
    "ReadSet",
    "ReconResult",
    "RunDecomposition",
    "Sequence",
    "SequenceSet",
    "VerificationReport",
    "alternating",
    "ball_intersection",
    "ball_membership",
    "bound_applicable",
    "channel_transmit",
    "claims_lambda",
    "constant_regime_bound",
    "coverage_bound",
    "delete",
    "deleted_hamming",
    "deletion_ball",
    "diff_profile",
    "ds_ball",
    "extremal_pair",
    "hamming",
    "intersection_size_fast",
    "lambda_enumerate",
    "landmarks",
    "levenshtein",
    "min_valid_length",
    "omega_groups",
    "phi",
    "read_coverage",
    "reconstruct",
    "required_reads",
    "runs",
    "sub_intersection_size",
    "substitution_ball",
    "substitution_ball_size",
    "verify_claims",
]
