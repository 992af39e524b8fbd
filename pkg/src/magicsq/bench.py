"""Timing harness and per-class quadratic fits of construction time versus order."""

from __future__ import annotations

import csv
import io
import logging
import time
from collections.abc import Callable, Iterable
from dataclasses import dataclass

import numpy as np

from .construct import construct
from .core import MagicSquareError, OrderClass, Square, classify_order
from .csp import DEFAULT_MAX_VARIABLES, SolveStatus, SolveTimeoutError, build_model, solve_builtin
from .verify import verify

log = logging.getLogger(__name__)

METHODS = ("fast", "csp")
CSV_COLUMNS = ("n", "class", "method", "seconds")
_CLASS_ORDER = {OrderClass.ODD: 0, OrderClass.SINGLY_EVEN: 1, OrderClass.DOUBLY_EVEN: 2}


class DegenerateDesignError(MagicSquareError):
    """Fewer than three distinct orders; a quadratic is not determined."""


class BenchVerificationError(MagicSquareError):
    pass


@dataclass(frozen=True)
class BenchSample:
    n: int
    order_class: OrderClass
    seconds: float
    method: str


@dataclass(frozen=True)
class QuadraticFit:
    """``seconds ~ a*n^2 + b*n + c`` for one order class."""

    order_class: OrderClass | None
    a: float
    b: float
    c: float
    residual_rms: float
    samples: int

    def __call__(self, n):
        return self.a * np.square(n) + self.b * n + self.c

    def to_dict(self) -> dict:
        return {
            "class": self.order_class.value if self.order_class else None,
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "residual_rms": self.residual_rms,
        }


def _fast_runner(n: int, csp_time_limit: float | None) -> Callable[[], Square]:
    return lambda: construct(n)


def _csp_runner(n: int, csp_time_limit: float | None) -> Callable[[], Square]:
    model = build_model(n, max_variables=DEFAULT_MAX_VARIABLES)

    def run() -> Square:
        result = solve_builtin(model, time_limit=csp_time_limit)
        if result.status is SolveStatus.UNKNOWN:
            raise SolveTimeoutError(f"CSP for n={n} exceeded {csp_time_limit} s")
        if result.solution is None:
            raise BenchVerificationError(f"CSP for n={n} reported infeasible")
        return result.solution.square

    return run


def time_best_of(fn: Callable[[], object], repetitions: int) -> tuple[float, object]:
    """Minimum wall time over ``repetitions`` calls, with the last result."""
    best = float("inf")
    out = None
    for _ in range(repetitions):
        t0 = time.perf_counter()
        out = fn()
        elapsed = time.perf_counter() - t0
        best = min(best, elapsed)
    return best, out


def run_bench(
    n_values: Iterable[int],
    method: str = "fast",
    repetitions: int = 3,
    *,
    warmup: bool = True,
    csp_time_limit: float | None = 60.0,
    skip_timeouts: bool = False,
) -> list[BenchSample]:
    """Time the constructor (or the built-in CSP solver) for each order.

    Each order gets one untimed warm-up call, then ``repetitions`` timed calls
    of which the fastest is kept. The result of the timed calls is verified
    outside the timing window.

    With ``method="csp"`` a solve that hits ``csp_time_limit`` raises
    :class:`SolveTimeoutError`, unless ``skip_timeouts`` is set, in which case
    the order is logged and left out.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if repetitions < 1:
        raise ValueError("repetitions must be at least 1")
    make = _fast_runner if method == "fast" else _csp_runner
    samples = []
    for n in n_values:
        order_class = classify_order(n)
        fn = make(n, csp_time_limit)
        try:
            if warmup:
                fn()
            seconds, square = time_best_of(fn, repetitions)
        except SolveTimeoutError:
            if not skip_timeouts:
                raise
            log.warning("n=%d: CSP solve timed out after %s s, skipped", n, csp_time_limit)
            continue
        if not verify(square).is_magic:
            raise BenchVerificationError(f"{method} output for n={n} is not magic")
        # perf_counter can report 0 for sub-resolution calls
        samples.append(BenchSample(n, order_class, max(seconds, 1e-9), method))
        del square
    return samples


def fit_quadratic(samples: Iterable[BenchSample]) -> QuadraticFit:
    """Least-squares ``a n^2 + b n + c`` through the samples."""
    samples = list(samples)
    ns = np.array([s.n for s in samples], dtype=float)
    ts = np.array([s.seconds for s in samples], dtype=float)
    if len(np.unique(ns)) < 3:
        raise DegenerateDesignError(f"need at least 3 distinct orders, got {len(np.unique(ns))}")
    # scale n to keep the design matrix well conditioned
    scale = float(np.max(np.abs(ns)))
    x = ns / scale
    design = np.column_stack([x * x, x, np.ones_like(x)])
    (a, b, c), *_ = np.linalg.lstsq(design, ts, rcond=None)
    a, b = a / scale**2, b / scale
    resid = a * ns**2 + b * ns + c - ts
    classes = {s.order_class for s in samples}
    return QuadraticFit(
        order_class=classes.pop() if len(classes) == 1 else None,
        a=float(a),
        b=float(b),
        c=float(c),
        residual_rms=float(np.sqrt(np.mean(resid**2))),
        samples=len(samples),
    )


def fit_by_class(samples: Iterable[BenchSample]) -> dict[OrderClass, QuadraticFit | None]:
    """One fit per order class present; ``None`` where the design is degenerate."""
    groups: dict[OrderClass, list[BenchSample]] = {}
    for s in samples:
        groups.setdefault(s.order_class, []).append(s)
    fits: dict[OrderClass, QuadraticFit | None] = {}
    for cls in sorted(groups, key=_CLASS_ORDER.__getitem__):
        try:
            fits[cls] = fit_quadratic(groups[cls])
        except DegenerateDesignError:
            fits[cls] = None
    return fits


def sort_samples(samples: Iterable[BenchSample]) -> list[BenchSample]:
    return sorted(samples, key=lambda s: (s.method, _CLASS_ORDER[s.order_class], s.n))


def samples_to_csv(samples: Iterable[BenchSample]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for s in sort_samples(samples):
        writer.writerow([s.n, s.order_class.value, s.method, repr(s.seconds)])
    return buf.getvalue()


def samples_from_csv(text: str) -> list[BenchSample]:
    reader = csv.DictReader(io.StringIO(text))
    return [
        BenchSample(int(row["n"]), OrderClass(row["class"]), float(row["seconds"]), row["method"])
        for row in reader
    ]


def stride_orders(lo: int, hi: int, step: int) -> list[int]:
    """Orders ``b, b+1, b+2`` for ``b = lo, lo+step, ...`` (clipped to ``hi``).

    With ``lo`` and ``step`` multiples of 4 every triple holds one doubly even,
    one odd and one singly even order.
    """
    out = []
    for base in range(lo, hi + 1, step):
        out += [n for n in (base, base + 1, base + 2) if n <= hi]
    return out
