"""Magic squares of any order: fast constructions, a verifier, and a binary CSP model."""

from .construct import construct
from .core import (
    MagicSquareError,
    OrderClass,
    Square,
    apply_min_offset,
    classify_order,
    magic_constant,
)
from .csp import build_model, export_lp, solve_builtin
from .doubly_even import doubly_even
from .odd import siamese
from .singly_even import build_quadrants, singly_even
from .verify import VerifyReport, verify

__version__ = "0.1.0"

__all__ = [
    "MagicSquareError",
    "OrderClass",
    "Square",
    "VerifyReport",
    "apply_min_offset",
    "build_model",
    "build_quadrants",
    "classify_order",
    "construct",
    "doubly_even",
    "export_lp",
    "magic_constant",
    "siamese",
    "singly_even",
    "solve_builtin",
    "verify",
]
