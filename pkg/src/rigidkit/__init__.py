"""Sparsity, direction-network realization and slider-pinning rigidity for looped graphs."""

from .errors import (
    CapExceeded,
    DomainError,
    InternalConsistencyError,
    NonGenericSamplingExhausted,
    NotDecomposable,
    OracleRefusal,
    RigidkitError,
)
from .graph import BLUE, RED, Loop, LoopedGraph, contract, induced_counts, validate

__version__ = "0.1.0"

__all__ = [
    "BLUE",
    "RED",
    "CapExceeded",
    "DomainError",
    "InternalConsistencyError",
    "Loop",
    "LoopedGraph",
    "NonGenericSamplingExhausted",
    "NotDecomposable",
    "OracleRefusal",
    "RigidkitError",
    "contract",
    "induced_counts",
    "validate",
]
