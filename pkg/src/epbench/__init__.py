"""Exact verification of EP-operator counterexamples and a falsifier for range identities."""

from .scalars import GaussianRational, parse_scalar, format_scalar
from .linalg import Matrix, rref, rank, pinv, solve, column_space_basis, null_space_basis
from .operators import (
    Operator,
    Subspace,
    ep_check,
    range_of,
    kernel,
    op_pinv,
    subspace_sum,
    subspace_eq,
    subspace_leq,
    block_column_pair,
)

__version__ = "0.1.0"

__all__ = [
    "GaussianRational",
    "parse_scalar",
    "format_scalar",
    "Matrix",
    "rref",
    "rank",
    "pinv",
    "solve",
    "column_space_basis",
    "null_space_basis",
    "Operator",
    "Subspace",
    "ep_check",
    "range_of",
    "kernel",
    "op_pinv",
    "subspace_sum",
    "subspace_eq",
    "subspace_leq",
    "block_column_pair",
]
