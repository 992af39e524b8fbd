import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from magicsq.core import NotDoublyEvenError, apply_min_offset, magic_constant
from magicsq.doubly_even import doubly_even, x_block_mask
from magicsq.verify import verify

from oracles import REF_4

DOUBLY_EVEN = list(range(4, 129, 4))


def test_order4_matches_reference():
    assert doubly_even(4).tolist() == REF_4


def test_order4_x_cells_match_reference_partition():
    x = x_block_mask(4)
    listed = {(1, 1), (1, 4), (2, 2), (2, 3), (3, 2), (3, 3), (4, 1), (4, 4)}
    assert {(i + 1, j + 1) for i, j in zip(*np.nonzero(x))} == listed


def test_order8_first_row():
    row = doubly_even(8).tolist()[0]
    assert row == [1, 2, 62, 61, 60, 59, 7, 8]
    assert sum(row) == 260 == magic_constant(8)


def test_order4_trace():
    sq = doubly_even(4)
    assert int(np.trace(sq.cells)) == 1 + 6 + 11 + 16 == 34


def _block_oracle(n):
    """X membership from the literal 4x4 arrangement of (n/4)-sized blocks."""
    pattern = ["XYYX", "YXXY", "YXXY", "XYYX"]
    q = n // 4
    return np.array([[pattern[i // q][j // q] == "X" for j in range(n)] for i in range(n)])


@pytest.mark.parametrize("n", DOUBLY_EVEN)
def test_block_mask_matches_arrangement(n):
    x = x_block_mask(n)
    assert np.array_equal(x, _block_oracle(n))
    assert (x.sum(axis=0) == n // 2).all() and (x.sum(axis=1) == n // 2).all()
    idx = np.arange(n)
    assert x[idx, idx].all() and x[idx, n - 1 - idx].all()


@pytest.mark.parametrize("n", DOUBLY_EVEN)
def test_construction(n):
    sq = doubly_even(n)
    assert verify(sq).is_magic
    pos = np.arange(1, n * n + 1).reshape(n, n)
    y = ~x_block_mask(n)
    assert (sq.cells[y] + pos[y] == n * n + 1).all()
    assert (sq.cells[~y] == pos[~y]).all()


@pytest.mark.parametrize("n", [4, 8, 12, 40])
def test_row_and_column_halves(n):
    sq = doubly_even(n).cells
    x = x_block_mask(n)
    target = magic_constant(n)
    for axis in (0, 1):
        x_part = np.where(x, sq, 0).sum(axis=axis)
        y_part = np.where(~x, sq, 0).sum(axis=axis)
        assert ((x_part + y_part) == target).all()


@given(st.integers(1, 30).map(lambda k: 4 * k), st.integers(1, 10**6))
def test_offset_equivariance(n, a_min):
    assert doubly_even(n, a_min) == apply_min_offset(doubly_even(n), a_min)


@pytest.mark.parametrize("n", [3, 6, 10, 9])
def test_rejects_other_orders(n):
    with pytest.raises(NotDoublyEvenError):
        doubly_even(n)
