"""MDS self-dual codes over odd-characteristic finite fields from (extended)
generalized Reed-Solomon codes, with brute-force cross-checks."""

from .estimator import SelfDualGRSCode
from .families import Claim, canonical_field, enumerate_claims, evaluate_claim, nonexistence_gate
from .field import Field, FieldElement, Subfield, field_of_order
from .grs import (
    CodeArtifact,
    ConditionUnsatisfied,
    VerificationReport,
    build_code,
    egrs_condition,
    grs_condition,
    solve_weights,
    verify,
)

__all__ = [
    "Claim",
    "CodeArtifact",
    "ConditionUnsatisfied",
    "Field",
    "FieldElement",
    "SelfDualGRSCode",
    "Subfield",
    "VerificationReport",
    "build_code",
    "canonical_field",
    "egrs_condition",
    "enumerate_claims",
    "evaluate_claim",
    "field_of_order",
    "grs_condition",
    "nonexistence_gate",
    "solve_weights",
    "verify",
]

__version__ = "0.1.0"
