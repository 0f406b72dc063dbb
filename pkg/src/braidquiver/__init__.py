"""Exact quiver model of perverse sheaves on braid arrangements.

Faces of real central arrangements, double representations of their face
posets, the embedding of the A_n face poset into a hyperplane of A_{n+1},
and extension by zero along it.
"""

from braidquiver.errors import (
    DomainError,
    InternalConsistencyError,
    MalformedInputError,
    StructuralError,
    TheoremViolation,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "InternalConsistencyError",
    "MalformedInputError",
    "StructuralError",
    "TheoremViolation",
    "__version__",
]
