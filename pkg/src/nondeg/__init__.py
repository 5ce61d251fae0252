"""Non-degenerate loci of polynomial systems over prime fields."""

from .kernels import BACKEND
from .poly import DEFAULT_PRIME, OpCounter, PolyRing, Polynomial, exact_divide, normal_form

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DEFAULT_PRIME",
    "OpCounter",
    "PolyRing",
    "Polynomial",
    "exact_divide",
    "normal_form",
]
