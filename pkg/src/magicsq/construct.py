"""Dispatch to the constructor matching the order class."""

from __future__ import annotations

from .core import OrderClass, Square, classify_order
from .doubly_even import doubly_even
from .odd import siamese
from .singly_even import singly_even

CONSTRUCTORS = {
    OrderClass.ODD: siamese,
    OrderClass.DOUBLY_EVEN: doubly_even,
    OrderClass.SINGLY_EVEN: singly_even,
}


def construct(n: int, a_min: int = 1) -> Square:
    """Build a magic square of any order ``n >= 3``."""
    return CONSTRUCTORS[classify_order(n)](n, a_min)
