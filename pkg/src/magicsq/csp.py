"""Binary constraint model for magic squares, an exact search, and LP export.

Variables are ``x[i, j, k]`` (1-based cell ``(i, j)``, value ``k``) meaning
"cell ``(i, j)`` holds ``k``". The model has one equality per value, one per
cell, one per row and column, and one per diagonal.
"""

from __future__ import annotations

import enum
import io
import os
import re
import time
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field, replace
from typing import IO, Union

import numpy as np

from .core import MagicSquareError, Square, check_min, check_order, magic_constant, max_entry

DEFAULT_MAX_VARIABLES = 10**7

Var = tuple[int, int, int]

FAMILIES = ("value", "cell", "row", "column", "diagonal", "anti_diagonal")


class ModelTooLargeError(MagicSquareError):
    pass


class NotExactlyOneError(MagicSquareError):
    def __init__(self, cell: tuple[int, int], count: int):
        super().__init__(f"cell {cell} has {count} values set, expected exactly one")
        self.cell = cell
        self.count = count


class SolutionFormatError(MagicSquareError):
    pass


class SinkWriteError(MagicSquareError, OSError):
    pass


class SolveTimeoutError(MagicSquareError, TimeoutError):
    pass


def var_name(var: Var) -> str:
    i, j, k = var
    return f"x_{i}_{j}_{k}"


_NAME = re.compile(r"^x_(\d+)_(\d+)_(\d+)$")


def parse_var_name(name: str) -> Var:
    match = _NAME.match(name)
    if not match:
        raise SolutionFormatError(f"not a model variable name: {name!r}")
    i, j, k = (int(g) for g in match.groups())
    return i, j, k


@dataclass(frozen=True)
class Constraint:
    """A linear equality ``sum(coef * x) == rhs``; terms are generated on demand."""

    family: str
    index: tuple[int, ...]
    rhs: int

    @property
    def name(self) -> str:
        return "_".join([self.family, *map(str, self.index)])


@dataclass(frozen=True)
class ConstraintModel:
    n: int
    a_min: int
    constraints: tuple[Constraint, ...]
    fixings: tuple[tuple[Var, int], ...] = ()

    @property
    def a_max(self) -> int:
        return max_entry(self.n, self.a_min)

    @property
    def magic_constant(self) -> int:
        return magic_constant(self.n, self.a_min)

    @property
    def values(self) -> range:
        return range(self.a_min, self.a_max + 1)

    @property
    def num_variables(self) -> int:
        return self.n**4

    def variables(self) -> Iterator[Var]:
        n = self.n
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                for k in self.values:
                    yield i, j, k

    def count_by_family(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for con in self.constraints:
            counts[con.family] = counts.get(con.family, 0) + 1
        return counts

    def terms(self, con: Constraint) -> Iterator[tuple[int, Var]]:
        """(coefficient, variable) pairs of one constraint."""
        n, values = self.n, self.values
        fam, idx = con.family, con.index
        if fam == "value":
            (k,) = idx
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    yield 1, (i, j, k)
        elif fam == "cell":
            i, j = idx
            for k in values:
                yield 1, (i, j, k)
        elif fam == "fix":
            yield 1, idx
        else:
            for i, j in self._line_cells(fam, idx):
                for k in values:
                    yield k, (i, j, k)

    def _line_cells(self, family: str, idx: tuple[int, ...]) -> list[tuple[int, int]]:
        n = self.n
        if family == "row":
            return [(idx[0], j) for j in range(1, n + 1)]
        if family == "column":
            return [(i, idx[0]) for i in range(1, n + 1)]
        if family == "diagonal":
            return [(i, i) for i in range(1, n + 1)]
        if family == "anti_diagonal":
            return [(i, n - i + 1) for i in range(1, n + 1)]
        raise ValueError(f"unknown family {family!r}")

    def with_fixings(self, fixings: Mapping[Var, int]) -> ConstraintModel:
        """Copy of the model with extra ``x[i, j, k] == 0/1`` equalities."""
        extra = []
        for var, value in sorted(fixings.items()):
            self._check_var(var)
            if value not in (0, 1):
                raise ValueError(f"fixing for {var_name(var)} must be 0 or 1, got {value}")
            extra.append((tuple(var), int(value)))
        cons = self.constraints + tuple(Constraint("fix", v, val) for v, val in extra)
        return replace(self, constraints=cons, fixings=self.fixings + tuple(extra))

    def _check_var(self, var: Var) -> None:
        i, j, k = var
        if not (1 <= i <= self.n and 1 <= j <= self.n and self.a_min <= k <= self.a_max):
            raise SolutionFormatError(f"{var_name(var)} is outside the model")


def build_model(n: int, a_min: int = 1, max_variables: int = DEFAULT_MAX_VARIABLES) -> ConstraintModel:
    n = check_order(n)
    a_min = check_min(a_min)
    if n**4 > max_variables:
        raise ModelTooLargeError(
            f"order {n} needs {n**4} binary variables, above the limit of {max_variables}"
        )
    target = magic_constant(n, a_min)
    cons: list[Constraint] = []
    cons += [Constraint("value", (k,), 1) for k in range(a_min, max_entry(n, a_min) + 1)]
    cons += [Constraint("cell", (i, j), 1) for i in range(1, n + 1) for j in range(1, n + 1)]
    cons += [Constraint("row", (i,), target) for i in range(1, n + 1)]
    cons += [Constraint("column", (j,), target) for j in range(1, n + 1)]
    cons.append(Constraint("diagonal", (), target))
    cons.append(Constraint("anti_diagonal", (), target))
    return ConstraintModel(n, a_min, tuple(cons))


# ---------------------------------------------------------------------------
# decoding


def decode_solution(model: ConstraintModel, raw: Mapping[Union[Var, str], float]) -> Square:
    """Recover the square from a 0/1 assignment of the model's variables.

    Keys may be ``(i, j, k)`` tuples or ``x_i_j_k`` names. Variables missing
    from ``raw`` count as 0, since solver output commonly omits zeros.
    Values within 1e-6 of 0 or 1 are accepted.
    """
    n = model.n
    grid = np.zeros((n, n), dtype=np.int64)
    counts = np.zeros((n, n), dtype=np.int64)
    for key, value in raw.items():
        var = parse_var_name(key) if isinstance(key, str) else tuple(key)
        model._check_var(var)
        bit = _as_bit(var, value)
        if bit:
            i, j, k = var
            grid[i - 1, j - 1] = k
            counts[i - 1, j - 1] += 1
    bad = np.argwhere(counts != 1)
    if bad.size:
        i, j = (int(x) for x in bad[0])
        raise NotExactlyOneError((i + 1, j + 1), int(counts[i, j]))
    return Square(grid, model.a_min)


def _as_bit(var: Var, value: float) -> int:
    value = float(value)
    if abs(value) <= 1e-6:
        return 0
    if abs(value - 1.0) <= 1e-6:
        return 1
    raise SolutionFormatError(f"{var_name(var)} = {value} is not binary")


def parse_solution_text(text: str) -> dict[Var, float]:
    """Read ``name value`` lines; blank lines and ``#`` comments are skipped."""
    out: dict[Var, float] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise SolutionFormatError(f"line {lineno}: expected 'name value', got {line!r}")
        name, value = parts
        try:
            out[parse_var_name(name)] = float(value)
        except ValueError as exc:
            raise SolutionFormatError(f"line {lineno}: {exc}") from None
    return out


def encode_square(square: Square) -> dict[Var, int]:
    """The 0/1 assignment representing ``square`` (only the ones are listed)."""
    n = square.n
    return {(i + 1, j + 1, int(square.cells[i, j])): 1 for i in range(n) for j in range(n)}


# ---------------------------------------------------------------------------
# LP export

_TERMS_PER_LINE = 8


def lp_lines(model: ConstraintModel) -> Iterator[str]:
    yield f"\\ magic square feasibility model n={model.n} a_min={model.a_min} C={model.magic_constant}"
    yield "Minimize"
    yield " obj: 0"
    yield "Subject To"
    for con in model.constraints:
        chunks: list[str] = []
        for coef, var in model.terms(con):
            term = var_name(var) if coef == 1 else f"{coef} {var_name(var)}"
            chunks.append(term if not chunks else f"+ {term}")
        first = True
        for start in range(0, len(chunks), _TERMS_PER_LINE):
            body = " ".join(chunks[start:start + _TERMS_PER_LINE])
            yield f" {con.name}: {body}" if first else f"   {body}"
            first = False
        yield f"   = {con.rhs}"
    yield "Binary"
    for var in model.variables():
        yield f" {var_name(var)}"
    yield "End"


def lp_text(model: ConstraintModel) -> str:
    return "".join(line + "\n" for line in lp_lines(model))


def export_lp(model: ConstraintModel, destination: Union[str, os.PathLike, IO]) -> None:
    """Write the model in LP format (ASCII, LF line endings).

    ``destination`` is a path or an open file object (text or binary).
    """
    try:
        if isinstance(destination, (str, os.PathLike)):
            with open(destination, "wb") as fh:
                _write_lines(model, fh)
        else:
            _write_lines(model, destination)
    except OSError as exc:
        raise SinkWriteError(f"could not write LP model: {exc}") from exc


def _write_lines(model: ConstraintModel, sink: IO) -> None:
    binary = isinstance(sink, (io.RawIOBase, io.BufferedIOBase)) or "b" in getattr(sink, "mode", "")
    for line in lp_lines(model):
        data = line + "\n"
        sink.write(data.encode("ascii") if binary else data)


# ---------------------------------------------------------------------------
# built-in exact search


class SolveStatus(enum.Enum):
    SOLVED = "solved"
    INFEASIBLE = "infeasible"
    UNKNOWN = "unknown"


@dataclass
class SearchStats:
    nodes: int = 0
    backtracks: int = 0
    seconds: float = 0.0


@dataclass(frozen=True)
class CspSolution:
    square: Square

    @property
    def assignment(self) -> dict[tuple[int, int], int]:
        n = self.square.n
        cells = self.square.cells
        return {(i + 1, j + 1): int(cells[i, j]) for i in range(n) for j in range(n)}


@dataclass
class SolveResult:
    """Outcome of :func:`solve_builtin`.

    ``complete`` is True when the search tree was exhausted (or the first
    solution was found in single-solution mode); an UNKNOWN status means the
    time limit hit first and says nothing about feasibility.
    """

    status: SolveStatus
    solutions: list[CspSolution] = field(default_factory=list)
    stats: SearchStats = field(default_factory=SearchStats)
    complete: bool = True

    @property
    def solution(self) -> CspSolution | None:
        return self.solutions[0] if self.solutions else None


class _Timeout(Exception):
    pass


class _Search:
    def __init__(self, model: ConstraintModel, deadline: float | None, enumerate_all: bool, limit: int | None):
        n = model.n
        self.n = n
        self.target = model.magic_constant
        self.values = list(model.values)
        self.deadline = deadline
        self.enumerate_all = enumerate_all
        self.limit = limit
        self.stats = SearchStats()
        self.solutions: list[CspSolution] = []

        # line ids: rows 0..n-1, columns n..2n-1, diagonal 2n, anti-diagonal 2n+1
        self.cell_lines: list[tuple[int, ...]] = []
        for i in range(n):
            for j in range(n):
                lines = [i, n + j]
                if i == j:
                    lines.append(2 * n)
                if i + j == n - 1:
                    lines.append(2 * n + 1)
                self.cell_lines.append(tuple(lines))
        self.line_sum = [0] * (2 * n + 2)
        self.line_left = [n] * (2 * n + 2)
        self.grid = [0] * (n * n)
        self.used = dict.fromkeys(self.values, False)

        # per-cell candidate lists honour 0/1 fixings
        allowed = {c: list(self.values) for c in range(n * n)}
        for (i, j, k), bit in model.fixings:
            c = (i - 1) * n + (j - 1)
            if bit:
                allowed[c] = [v for v in allowed[c] if v == k]
            else:
                allowed[c] = [v for v in allowed[c] if v != k]
        self.allowed = allowed

    def run(self) -> bool:
        """Returns True if the tree was exhausted or the wanted solutions found."""
        try:
            self._descend(0)
        except _Timeout:
            return False
        return True

    def _bounds_ok(self) -> bool:
        free = [v for v in self.values if not self.used[v]]
        prefix = [0]
        for v in free:
            prefix.append(prefix[-1] + v)
        total = prefix[-1]
        m = len(free)
        target = self.target
        for s, left in zip(self.line_sum, self.line_left):
            if left == 0:
                if s != target:
                    return False
                continue
            if s + prefix[left] > target:
                return False
            if s + total - prefix[m - left] < target:
                return False
        return True

    def _descend(self, cell: int) -> bool:
        stats = self.stats
        stats.nodes += 1
        if self.deadline is not None and stats.nodes & 1023 == 0 and time.monotonic() > self.deadline:
            raise _Timeout
        n = self.n
        if cell == n * n:
            square = Square(np.array(self.grid, dtype=np.int64).reshape(n, n), self.values[0])
            self.solutions.append(CspSolution(square))
            if not self.enumerate_all:
                return True
            return self.limit is not None and len(self.solutions) >= self.limit

        lines = self.cell_lines[cell]
        candidates = self.allowed[cell]
        # the last open cell of a line is forced
        for line in lines:
            if self.line_left[line] == 1:
                forced = self.target - self.line_sum[line]
                candidates = [forced] if forced in candidates else []
                break

        for v in candidates:
            if self.used[v]:
                continue
            self.used[v] = True
            self.grid[cell] = v
            for line in lines:
                self.line_sum[line] += v
                self.line_left[line] -= 1
            if self._bounds_ok() and self._descend(cell + 1):
                return True
            for line in lines:
                self.line_sum[line] -= v
                self.line_left[line] += 1
            self.grid[cell] = 0
            self.used[v] = False
            stats.backtracks += 1
        return False


def solve_builtin(
    model: ConstraintModel,
    time_limit: float | None = 60.0,
    enumerate_all: bool = False,
    max_solutions: int | None = None,
) -> SolveResult:
    """Exact depth-first search over cell assignments.

    Cells are filled in row-major order with values tried in ascending order.
    After each assignment every row, column and diagonal is bounded by the
    smallest and largest completions available from the unused values, and
    the last open cell of a line is forced to the value that closes it.

    With ``enumerate_all`` the search continues past the first solution and
    collects every square (up to ``max_solutions``).
    """
    start = time.monotonic()
    deadline = None if time_limit is None else start + time_limit
    search = _Search(model, deadline, enumerate_all, max_solutions)
    finished = search.run()
    search.stats.seconds = time.monotonic() - start
    if search.solutions:
        status = SolveStatus.SOLVED
    elif finished:
        status = SolveStatus.INFEASIBLE
    else:
        status = SolveStatus.UNKNOWN
    return SolveResult(status, search.solutions, search.stats, complete=finished)
