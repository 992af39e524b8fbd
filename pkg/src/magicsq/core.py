"""Core types shared by every constructor, the verifier and the CSP model."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

INT64_MAX = int(np.iinfo(np.int64).max)


class MagicSquareError(ValueError):
    """Base class for all errors raised by this package."""


class OrderTooSmallError(MagicSquareError):
    pass


class InvalidMinimumError(MagicSquareError):
    pass


class OverflowRangeError(MagicSquareError, OverflowError):
    """Entries or line sums would not fit in a signed 64-bit integer."""


class WrongOrderClassError(MagicSquareError):
    """The order does not belong to the class an operation requires."""


class NotOddError(WrongOrderClassError):
    pass


class NotEvenError(WrongOrderClassError):
    pass


class NotDoublyEvenError(WrongOrderClassError):
    pass


class NotSinglyEvenError(WrongOrderClassError):
    pass


class OrderClass(enum.Enum):
    ODD = "odd"
    SINGLY_EVEN = "singly_even"
    DOUBLY_EVEN = "doubly_even"


def check_order(n: int) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise TypeError(f"order must be an integer, got {type(n).__name__}")
    n = int(n)
    if n < 3:
        raise OrderTooSmallError(f"order must be at least 3, got {n}")
    return n


def check_min(a_min: int) -> int:
    if isinstance(a_min, bool) or not isinstance(a_min, (int, np.integer)):
        raise TypeError(f"a_min must be an integer, got {type(a_min).__name__}")
    a_min = int(a_min)
    if a_min < 1:
        raise InvalidMinimumError(f"a_min must be a positive integer, got {a_min}")
    return a_min


def _guard_range(n: int, a_min: int) -> None:
    # the largest quantity any line sum can reach is n * a_max
    a_max = a_min + n * n - 1
    if n * a_max > INT64_MAX:
        raise OverflowRangeError(
            f"order {n} with a_min={a_min} exceeds the signed 64-bit range"
        )


def magic_constant(n: int, a_min: int = 1) -> int:
    """Common line sum of an order-``n`` magic square starting at ``a_min``.

    >>> magic_constant(3), magic_constant(4), magic_constant(3, 2)
    (15, 34, 18)
    """
    n = check_order(n)
    a_min = check_min(a_min)
    _guard_range(n, a_min)
    return n * (n * n + 1) // 2 + n * (a_min - 1)


def max_entry(n: int, a_min: int = 1) -> int:
    return a_min + n * n - 1


def classify_order(n: int) -> OrderClass:
    n = check_order(n)
    if n % 2 == 1:
        return OrderClass.ODD
    if n % 4 == 0:
        return OrderClass.DOUBLY_EVEN
    return OrderClass.SINGLY_EVEN


@dataclass(frozen=True, eq=False)
class Square:
    """An ``n x n`` integer matrix together with its declared minimum entry.

    ``cells`` is stored as a read-only, C-contiguous ``int64`` array. Whether the
    matrix is actually magic is a question for :func:`magicsq.verify.verify`.
    """

    cells: np.ndarray
    a_min: int = 1
    _adopted: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        a_min = check_min(self.a_min)
        raw = np.asarray(self.cells)
        if raw.ndim != 2 or raw.shape[0] != raw.shape[1]:
            raise MagicSquareError(f"cells must be a square matrix, got shape {raw.shape}")
        check_order(raw.shape[0])
        if raw.dtype.kind not in "iub":
            raise TypeError(f"cells must hold integers, got dtype {raw.dtype}")
        if raw.dtype.kind == "u" and raw.size and int(raw.max()) > INT64_MAX:
            raise OverflowRangeError("entry exceeds the signed 64-bit range")
        if self._adopted:
            cells = raw
        else:
            cells = np.array(raw, dtype=np.int64, order="C", copy=True)
        n = cells.shape[0]
        _guard_range(n, a_min)
        biggest = max(int(cells.max()), -int(cells.min()))
        # any line sum must stay representable
        if biggest > INT64_MAX // n:
            raise OverflowRangeError("line sums of this matrix exceed the signed 64-bit range")
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "a_min", a_min)

    @property
    def n(self) -> int:
        return self.cells.shape[0]

    @property
    def a_max(self) -> int:
        return max_entry(self.n, self.a_min)

    @property
    def magic_constant(self) -> int:
        return magic_constant(self.n, self.a_min)

    def tolist(self) -> list[list[int]]:
        return self.cells.tolist()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Square):
            return NotImplemented
        return self.a_min == other.a_min and np.array_equal(self.cells, other.cells)

    def __hash__(self) -> int:
        return hash((self.a_min, self.cells.tobytes()))

    def __repr__(self) -> str:
        return f"Square(n={self.n}, a_min={self.a_min})"


def apply_min_offset(square: Square, a_min: int) -> Square:
    """Shift a square built with ``a_min = 1`` so its entries start at ``a_min``."""
    a_min = check_min(a_min)
    if square.a_min != 1:
        raise InvalidMinimumError(
            f"offset must be applied to a square with a_min=1, got a_min={square.a_min}"
        )
    _guard_range(square.n, a_min)
    if a_min == 1:
        return square
    return _from_unit_grid(square.cells + 0, a_min)


def _from_unit_grid(grid: np.ndarray, a_min: int) -> Square:
    """Wrap a freshly built 1-based grid, shifting in place when needed."""
    if a_min != 1:
        grid += a_min - 1
    return Square(np.ascontiguousarray(grid, dtype=np.int64), a_min, _adopted=True)
