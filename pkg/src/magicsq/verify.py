"""Magic-square verifier and numeric checks for the construction lemmas."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (
    NotDoublyEvenError,
    NotEvenError,
    NotSinglyEvenError,
    Square,
    check_order,
    magic_constant,
)

DEFAULT_MAX_FAILURES = 100

# property labels of the magic square definition
UNIQUE = "i"
RANGE = "ii"
COLUMN = "iii"
ROW = "iv"
MAIN_DIAGONAL = "v"
ANTI_DIAGONAL = "vi"


@dataclass(frozen=True)
class Finding:
    """One violated property.

    ``kind`` is ``"cell"``, ``"row"``, ``"column"``, ``"diagonal"`` or
    ``"anti_diagonal"``; ``index`` holds 1-based coordinates (empty for the
    diagonals). For range findings on the whole matrix (``kind == "min"`` or
    ``"max"``) the index is empty as well.
    """

    property: str
    kind: str
    index: tuple[int, ...]
    expected: int | None
    observed: int

    def describe(self) -> str:
        where = self.kind if not self.index else f"{self.kind} {','.join(map(str, self.index))}"
        if self.property == UNIQUE:
            return f"({self.property}) {where}: value {self.observed} already used"
        if self.kind == "cell":
            return f"({self.property}) {where}: value {self.observed} outside [{self.expected[0]}, {self.expected[1]}]"
        return f"({self.property}) {where}: expected {self.expected}, got {self.observed}"

    def to_dict(self) -> dict:
        expected = list(self.expected) if isinstance(self.expected, tuple) else self.expected
        return {
            "property": self.property,
            "kind": self.kind,
            "index": list(self.index),
            "expected": expected,
            "observed": self.observed,
        }


@dataclass
class VerifyReport:
    n: int
    a_min: int
    magic_constant: int
    failures: list[Finding] = field(default_factory=list)
    max_failures: int = DEFAULT_MAX_FAILURES
    truncated: bool = False

    @property
    def is_magic(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.is_magic

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "a_min": self.a_min,
            "magic_constant": self.magic_constant,
            "is_magic": self.is_magic,
            "max_failures": self.max_failures,
            "truncated": self.truncated,
            "failures": [f.to_dict() for f in self.failures],
        }

    def summary(self) -> str:
        head = "magic" if self.is_magic else "NOT magic"
        lines = [f"{head}: n={self.n} a_min={self.a_min} constant={self.magic_constant}"]
        lines += ["  " + f.describe() for f in self.failures]
        if self.truncated:
            lines.append(f"  ... output capped at {self.max_failures} findings")
        return "\n".join(lines)


class _Collector:
    def __init__(self, cap: int):
        self.cap = cap
        self.items: list[Finding] = []
        self.truncated = False

    def add(self, finding: Finding) -> bool:
        if len(self.items) >= self.cap:
            self.truncated = True
            return False
        self.items.append(finding)
        return True


def _uniqueness_and_range(cells: np.ndarray, a_min: int, out: _Collector) -> None:
    n = cells.shape[0]
    flat = cells.ravel()
    a_max = a_min + n * n - 1
    in_range = (flat >= a_min) & (flat <= a_max)

    # slot = value - a_min; the first occurrence in row-major order is not a duplicate
    positions = np.flatnonzero(in_range)
    slots = flat[positions] - a_min
    _, first = np.unique(slots, return_index=True)
    keep = np.zeros(positions.size, dtype=bool)
    keep[first] = True
    for pos in positions[~keep]:
        i, j = divmod(int(pos), n)
        if not out.add(Finding(UNIQUE, "cell", (i + 1, j + 1), None, int(flat[pos]))):
            break

    for pos in np.flatnonzero(~in_range):
        i, j = divmod(int(pos), n)
        if not out.add(Finding(RANGE, "cell", (i + 1, j + 1), (a_min, a_max), int(flat[pos]))):
            break

    # all cells in range but duplicates can still hide a_min or a_max
    if in_range.all():
        lo, hi = int(flat.min()), int(flat.max())
        if lo != a_min:
            out.add(Finding(RANGE, "min", (), a_min, lo))
        if hi != a_max:
            out.add(Finding(RANGE, "max", (), a_max, hi))


def _line_findings(sums: np.ndarray, target: int, prop: str, kind: str, out: _Collector) -> None:
    for idx in np.flatnonzero(sums != target):
        if not out.add(Finding(prop, kind, (int(idx) + 1,), target, int(sums[idx]))):
            return


def verify(square: Square, max_failures: int = DEFAULT_MAX_FAILURES) -> VerifyReport:
    """Check every magic-square property against the square's declared ``a_min``.

    Findings are produced in a fixed scan order: uniqueness, range, rows,
    columns, main diagonal, secondary diagonal. At most ``max_failures`` are
    kept; ``truncated`` records whether more were found.
    """
    if max_failures < 1:
        raise ValueError("max_failures must be positive")
    n, a_min = square.n, square.a_min
    target = magic_constant(n, a_min)
    cells = square.cells
    out = _Collector(max_failures)

    _uniqueness_and_range(cells, a_min, out)
    _line_findings(cells.sum(axis=1), target, ROW, "row", out)
    _line_findings(cells.sum(axis=0), target, COLUMN, "column", out)
    trace = int(np.trace(cells))
    if trace != target:
        out.add(Finding(MAIN_DIAGONAL, "diagonal", (), target, trace))
    anti = int(np.trace(cells[:, ::-1]))
    if anti != target:
        out.add(Finding(ANTI_DIAGONAL, "anti_diagonal", (), target, anti))

    return VerifyReport(n, a_min, target, out.items, max_failures, out.truncated)


def is_magic(square: Square) -> bool:
    return verify(square, max_failures=1).is_magic


# ---------------------------------------------------------------------------
# lemma checks


@dataclass(frozen=True)
class IndexSets:
    """Outer (first and last quarter) and inner (middle half) 1-based indices."""

    n: int

    def __post_init__(self) -> None:
        check_order(self.n)
        if self.n % 4:
            raise NotDoublyEvenError(f"order must be divisible by 4, got {self.n}")

    @property
    def k(self) -> int:
        return self.n // 4

    @property
    def outer(self) -> tuple[int, ...]:
        return (*range(1, self.k + 1), *range(3 * self.k + 1, self.n + 1))

    @property
    def inner(self) -> range:
        return range(self.k + 1, 3 * self.k + 1)


def lemma1_sums(n: int) -> tuple[int, int]:
    """Sums of the outer and inner index sets of a doubly even order.

    Both equal ``4k^2 + k`` with ``k = n/4``.
    """
    sets = IndexSets(n)
    return sum(sets.outer), sum(sets.inner)


@dataclass(frozen=True)
class PartialSumReport:
    column_sums: tuple[int, ...]
    upper_row_sums: tuple[int, ...]
    lower_row_sums: tuple[int, ...]
    main_diag_sum: int
    anti_diag_sum: int


def partial_sums(square: Square) -> PartialSumReport:
    """Raw line sums of an even-order square, split into upper and lower halves."""
    n = square.n
    if n % 2:
        raise NotEvenError(f"order must be even, got {n}")
    cells = square.cells
    rows = cells.sum(axis=1).tolist()
    return PartialSumReport(
        column_sums=tuple(cells.sum(axis=0).tolist()),
        upper_row_sums=tuple(rows[: n // 2]),
        lower_row_sums=tuple(rows[n // 2:]),
        main_diag_sum=int(np.trace(cells)),
        anti_diag_sum=int(np.trace(cells[:, ::-1])),
    )


def check_transfer_constants(n: int) -> tuple[int, int]:
    """Row mass moved by the singly even exchanges.

    Returns ``(c, d)`` with ``c = (3n^3 - 6n^2)/16`` (first three swaps) and
    ``d = (n^3 - 6n^2)/16`` (fourth swap). Raises if either is not an exact
    integer or if ``c - d != n^3/8``.
    """
    n = check_order(n)
    if n % 4 != 2:
        raise NotSinglyEvenError(f"order must be 2 mod 4, got {n}")
    c_num = 3 * n**3 - 6 * n**2
    d_num = n**3 - 6 * n**2
    if c_num % 16 or d_num % 16 or (n**3) % 8:
        raise ArithmeticError(f"transfer constants are not integral for n={n}")
    c, d = c_num // 16, d_num // 16
    if c - d != n**3 // 8:
        raise ArithmeticError(f"c - d != n^3/8 for n={n}")
    return c, d
