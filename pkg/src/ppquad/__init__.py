"""Spanning bipartite quadrangulations of projective-plane triangulations."""

from ppquad.errors import (
    BudgetExceeded,
    DomainError,
    PreconditionError,
    StructuralError,
    TheoremViolation,
)
from ppquad.surface import Dart, EmbeddedGraph

__all__ = [
    "BudgetExceeded",
    "Dart",
    "DomainError",
    "EmbeddedGraph",
    "PreconditionError",
    "StructuralError",
    "TheoremViolation",
]

__version__ = "0.1.0"
