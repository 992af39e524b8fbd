"""Doubly even construction: X/Y block pattern with complemented Y blocks."""

from __future__ import annotations

import numpy as np

from .core import NotDoublyEvenError, Square, _from_unit_grid, _guard_range, check_min, check_order


def outer_mask(n: int) -> np.ndarray:
    """Boolean vector over 0-based indices: True in the first and last quarters."""
    k = n // 4
    idx = np.arange(n)
    return (idx < k) | (idx >= 3 * k)


def x_block_mask(n: int) -> np.ndarray:
    """Cells lying in X blocks of the 4x4 arrangement XYYX / YXXY / YXXY / XYYX.

    A cell is in X exactly when its row quarter and column quarter are both
    outer or both inner.
    """
    if n % 4:
        raise NotDoublyEvenError(f"order must be divisible by 4, got {n}")
    outer = outer_mask(n)
    return outer[:, None] == outer[None, :]


def doubly_even(n: int, a_min: int = 1) -> Square:
    """Doubly even magic square.

    X cells hold their row-major position ``(i-1)n + j``; Y cells hold the
    complement ``n^2 + 1 - ((i-1)n + j)``.
    """
    n = check_order(n)
    a_min = check_min(a_min)
    if n % 4:
        raise NotDoublyEvenError(f"order must be divisible by 4, got {n}")
    _guard_range(n, a_min)
    grid = np.arange(1, n * n + 1, dtype=np.int64).reshape(n, n)
    np.subtract(n * n + 1, grid, out=grid, where=~x_block_mask(n))
    return _from_unit_grid(grid, a_min)
