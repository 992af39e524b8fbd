"""Siamese (De la Loubere) construction for odd orders."""

from __future__ import annotations

import numpy as np

from .core import NotOddError, Square, _from_unit_grid, _guard_range, check_min, check_order


def siamese_walk(n: int) -> np.ndarray:
    """Place 1..n^2 one value at a time following the up-right/drop-down rules.

    This is the literal serial walk, kept as a readable reference. It is O(n^2)
    Python steps; :func:`siamese_grid` produces the same grid with array ops.
    Returns a 0-based numpy grid holding values 1..n^2.
    """
    if n % 2 == 0:
        raise NotOddError(f"Siamese method needs an odd order, got {n}")
    grid = np.zeros((n, n), dtype=np.int64)
    row, col = 0, (n - 1) // 2
    grid[row, col] = 1
    for value in range(2, n * n + 1):
        if (row, col) == (0, n - 1):
            row, col = row + 1, col
        else:
            up, right = (row - 1) % n, (col + 1) % n
            if grid[up, right]:
                row, col = row + 1, col
            else:
                row, col = up, right
        # zero means unoccupied; the walk must never revisit a cell
        assert grid[row, col] == 0, f"cell ({row + 1}, {col + 1}) visited twice"
        grid[row, col] = value
    return grid


def siamese_grid(p: int) -> np.ndarray:
    """Vectorised Siamese walk for any odd ``p >= 3`` (values 1..p^2).

    The walk runs in blocks of ``p`` values: ``p - 1`` up-right moves followed
    by one drop-down when the next diagonal cell is taken. Block ``b`` starts at
    row ``2b`` and column ``c0 - b`` (mod ``p``, ``c0 = (p-1)/2``), so step ``r``
    of block ``b`` lands on ``(2b - r, c0 - b + r)``. Inverting, cell
    ``(i, j)`` belongs to block ``b = (i + j - c0) mod p`` at step
    ``r = (2b - i) mod p`` and holds ``b*p + r + 1``.
    """
    if p % 2 == 0 or p < 3:
        raise NotOddError(f"Siamese method needs an odd order >= 3, got {p}")
    idx = np.arange(p, dtype=np.int64)
    block = (idx[:, None] + idx[None, :] - (p - 1) // 2) % p
    step = (2 * block - idx[:, None]) % p
    block *= p
    block += step
    block += 1
    return block


def siamese(n: int, a_min: int = 1) -> Square:
    """Odd-order magic square with entries ``a_min .. a_min + n^2 - 1``."""
    n = check_order(n)
    a_min = check_min(a_min)
    if n % 2 == 0:
        raise NotOddError(f"Siamese method needs an odd order, got {n}")
    _guard_range(n, a_min)
    return _from_unit_grid(siamese_grid(n), a_min)
