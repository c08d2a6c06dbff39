"""Exact Green ring arithmetic and Adams operations for cyclic p-groups in characteristic p."""

from .adams import (
    adams_lambda,
    adams_lambda_fast,
    adams_s,
    adams_s_direct,
    adams_s_fast,
    adams_s_via_lambda,
    closed_form_adams_regular_lambda,
    closed_form_adams_regular_s,
)
from .errors import CapExceeded, ConsistencyError, ContextMismatch, GreenError, NotUnipotent
from .fplinalg import JordanType, MatrixFp, PrimeField, jordan_type_unipotent, rank
from .greenring import GreenContext, GreenElement
from .modreal import ModuleRep, decompose, exterior_power, indecomposable, symmetric_power, tensor
from .verify import VerificationReport, minimal_period

__all__ = [
    "CapExceeded",
    "ConsistencyError",
    "ContextMismatch",
    "GreenContext",
    "GreenElement",
    "GreenError",
    "JordanType",
    "MatrixFp",
    "ModuleRep",
    "NotUnipotent",
    "PrimeField",
    "VerificationReport",
    "adams_lambda",
    "adams_lambda_fast",
    "adams_s",
    "adams_s_direct",
    "adams_s_fast",
    "adams_s_via_lambda",
    "closed_form_adams_regular_lambda",
    "closed_form_adams_regular_s",
    "decompose",
    "exterior_power",
    "indecomposable",
    "jordan_type_unipotent",
    "minimal_period",
    "rank",
    "symmetric_power",
    "tensor",
]
