"""Singly even construction: four offset Siamese quadrants plus four vertical exchanges.

The assembled matrix is laid out as::

    [ A1 | A3 ]
    [ A4 | A2 ]

where quadrant ``l`` is the order ``p = n/2`` Siamese square shifted by
``(l - 1) * n^2 / 4``. Quadrants A1 and A4 are cut into corner blocks of size
``m = (n - 2)/4``, a middle column, and a middle row; A3 and A2 are cut into a
left part of width ``m + 2`` and a right part of width ``m - 1``. Swapping the
pieces listed in :data:`EXCHANGES` between the upper and lower halves balances
every row and both diagonals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import NotSinglyEvenError, Square, _from_unit_grid, _guard_range, check_min, check_order
from .odd import siamese_grid

EXCHANGES = (1, 2, 3, 4)

Region = tuple[slice, slice]


@dataclass(frozen=True)
class QuadrantLayout:
    """Block geometry for a singly even order ``n``.

    All ranges are 0-based half-open slices. Quadrant-local ranges refer to a
    single ``p x p`` quadrant; ``upper``/``lower`` regions refer to the full
    matrix and always share their column slice.
    """

    n: int

    def __post_init__(self) -> None:
        check_order(self.n)
        if self.n % 4 != 2:
            raise NotSinglyEvenError(f"order must be 2 mod 4, got {self.n}")

    @property
    def p(self) -> int:
        return self.n // 2

    @property
    def m(self) -> int:
        return (self.n - 2) // 4

    def offset(self, quadrant: int) -> int:
        """Value added to the unit Siamese square for quadrant 1..4."""
        if quadrant not in (1, 2, 3, 4):
            raise ValueError(f"quadrant must be 1..4, got {quadrant}")
        return (quadrant - 1) * self.n * self.n // 4

    def quadrant_origin(self, quadrant: int) -> tuple[int, int]:
        p = self.p
        return {1: (0, 0), 3: (0, p), 4: (p, 0), 2: (p, p)}[quadrant]

    # partition of quadrants 1 and 4
    def corner(self, r: int) -> Region:
        m, p = self.m, self.p
        rows = slice(0, m) if r in (1, 2) else slice(m + 1, p)
        cols = slice(0, m) if r in (1, 3) else slice(m + 1, p)
        return rows, cols

    def x_segment(self) -> Region:
        return slice(0, self.m), slice(self.m, self.m + 1)

    def z_segment(self) -> Region:
        return slice(self.m + 1, self.p), slice(self.m, self.m + 1)

    def y_segment(self) -> Region:
        return slice(self.m, self.m + 1), slice(0, self.m)

    def w_segment(self) -> Region:
        # columns m+1..2m (1-based) of the middle row
        return slice(self.m, self.m + 1), slice(self.m, 2 * self.m)

    def alpha(self) -> Region:
        return slice(self.m, self.m + 1), slice(self.p - 1, self.p)

    # partition of quadrants 2 and 3
    def b1(self) -> Region:
        return slice(0, self.p), slice(0, (self.n + 6) // 4)

    def b2(self) -> Region:
        return slice(0, self.p), slice((self.n + 6) // 4, self.p)

    def exchange_regions(self, exchange: int) -> tuple[Region, Region]:
        """Upper and lower full-matrix regions swapped by exchange 1..4."""
        local, quadrants = {
            1: (self.corner(1), (1, 4)),
            2: (self.corner(3), (1, 4)),
            3: (self.w_segment(), (1, 4)),
            4: (self.b2(), (3, 2)),
        }[exchange]
        upper = _shift(local, self.quadrant_origin(quadrants[0]))
        lower = _shift(local, self.quadrant_origin(quadrants[1]))
        return upper, lower


def _shift(region: Region, origin: tuple[int, int]) -> Region:
    rows, cols = region
    r0, c0 = origin
    return slice(rows.start + r0, rows.stop + r0), slice(cols.start + c0, cols.stop + c0)


def _quadrant_grid(n: int) -> np.ndarray:
    layout = QuadrantLayout(n)
    p = layout.p
    unit = siamese_grid(p)
    grid = np.empty((n, n), dtype=np.int64)
    for quadrant in (1, 2, 3, 4):
        r0, c0 = layout.quadrant_origin(quadrant)
        np.add(unit, layout.offset(quadrant), out=grid[r0:r0 + p, c0:c0 + p])
    return grid


def apply_exchanges(grid: np.ndarray, n: int, exchanges=EXCHANGES) -> np.ndarray:
    """Swap the listed sub-blocks between halves of ``grid`` in place."""
    layout = QuadrantLayout(n)
    for exchange in exchanges:
        upper, lower = layout.exchange_regions(exchange)
        held = grid[upper].copy()
        grid[upper] = grid[lower]
        grid[lower] = held
    return grid


def build_quadrants(n: int) -> Square:
    """Intermediate matrix: the four offset quadrants before any exchange."""
    n = check_order(n)
    if n % 4 != 2:
        raise NotSinglyEvenError(f"order must be 2 mod 4, got {n}")
    return _from_unit_grid(_quadrant_grid(n), 1)


def singly_even(n: int, a_min: int = 1, exchanges=EXCHANGES) -> Square:
    """Singly even magic square.

    ``exchanges`` exists so the partial states (e.g. only the first three
    swaps) can be inspected; anything other than the default does not yield a
    magic square.
    """
    n = check_order(n)
    a_min = check_min(a_min)
    if n % 4 != 2:
        raise NotSinglyEvenError(f"order must be 2 mod 4, got {n}")
    _guard_range(n, a_min)
    grid = apply_exchanges(_quadrant_grid(n), n, exchanges)
    return _from_unit_grid(grid, a_min)
