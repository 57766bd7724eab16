"""Sections of the induced fibration and the trace problem.

A section picks one event per capital: ``c -> (f(c), u**f(c) * c)`` for
an arbitrary time map ``f``, and every section has that form.  The
trace problem runs the other way: a sampled capital evolution
``M : T -> C`` is the trace of a section exactly when
``v(t) = M(t) * u**(-t)`` is injective and onto the capitals of
interest, in which case the sampled pairs ``(t, v(t))`` witness the
inverse time map.

On a finite grid, strict monotonicity of ``v`` (ties within tolerance
count as failures) stands in for injectivity, and range coverage of an
explicit target interval stands in for surjectivity; both are the
strongest finitely checkable versions of the continuum statements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from . import backend
from .core import (
    DEFAULT_TOL,
    FD_STEP,
    DomainError,
    EvaluationError,
    FinancialEvent,
    RangeError,
    Rate,
    eval_on_grid,
    fd_derivative,
    rel_scale,
)

__all__ = [
    "Section",
    "section_from_time_map",
    "section_eval",
    "is_section",
    "CapitalEvolution",
    "TraceReport",
    "trace_test",
    "decreasing_evolution_shortcut",
]

Capitals = Union[tuple[float, float], np.ndarray]


def _domain_bounds(domain: Capitals) -> tuple[float, float]:
    if isinstance(domain, tuple):
        lo, hi = float(domain[0]), float(domain[1])
    else:
        arr = np.asarray(domain, dtype=np.float64)
        if arr.size == 0:
            raise ValueError("capital domain must be nonempty")
        lo, hi = float(arr.min()), float(arr.max())
    if not (lo <= hi):
        raise ValueError(f"empty capital domain ({lo!r}, {hi!r})")
    return lo, hi


def _sample_capitals(domain: Capitals, samples: int) -> np.ndarray:
    if not isinstance(domain, tuple):
        return np.asarray(domain, dtype=np.float64)
    lo, hi = _domain_bounds(domain)
    return np.linspace(lo, hi, samples)


@dataclass(frozen=True)
class Section:
    """A choice of one event per capital, determined by its time map."""

    rate: Rate
    time_map: Callable[[float], float]
    domain: Capitals


def section_from_time_map(
    f: Callable[[float], float], i: Rate, domain: Capitals
) -> Section:
    """The section with time map ``f``: ``c -> (f(c), u**f(c) * c)``."""
    _domain_bounds(domain)
    return Section(rate=i, time_map=f, domain=domain)


def section_eval(s: Section, c: float) -> FinancialEvent:
    """Evaluate a section at a capital in its domain."""
    lo, hi = _domain_bounds(s.domain)
    if not (lo <= c <= hi):
        raise DomainError(f"capital {c!r} outside section domain [{lo!r}, {hi!r}]")
    t = float(s.time_map(c))
    if not math.isfinite(t):
        raise EvaluationError(f"time map produced {t!r} at c={c!r}")
    try:
        capital = s.rate.u**t * c
    except OverflowError:
        raise RangeError("section evaluation overflowed") from None
    if math.isinf(capital):
        raise RangeError("section evaluation overflowed")
    return FinancialEvent(t, capital)


def is_section(
    s1: Callable[[float], float],
    s2: Callable[[float], float],
    i: Rate,
    domain: Capitals,
    tol: float = DEFAULT_TOL,
    samples: int = 100,
) -> bool:
    """Whether the curve ``c -> (s1(c), s2(c))`` projects back to ``c``.

    Checks ``s2(c) = c * u**s1(c)`` on sampled capitals, which is the
    full characterization of sections of the induced fibration.
    """
    u = i.u
    for c in _sample_capitals(domain, samples):
        c = float(c)
        try:
            expected = c * u ** float(s1(c))
        except OverflowError:
            return False
        actual = float(s2(c))
        if not math.isfinite(actual) or not math.isfinite(expected):
            return False
        if abs(actual - expected) > tol * rel_scale(actual, expected):
            return False
    return True


@dataclass(frozen=True)
class CapitalEvolution:
    """A capital path over time, sampled on a strictly increasing grid.

    Either ``func`` (a callable, evaluated on the grid as needed) or
    ``values`` (samples aligned with the grid, e.g. from a CSV) must be
    given.  ``derivative`` is optional and only consulted by the
    decreasing-evolution shortcut.
    """

    grid: np.ndarray
    func: Optional[Callable[[float], float]] = None
    values: Optional[np.ndarray] = None
    derivative: Optional[Callable[[float], float]] = None
    domain: Optional[tuple[float, float]] = None

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=np.float64)
        if grid.ndim != 1 or grid.size == 0:
            raise ValueError("grid must be a nonempty 1-d array")
        if not np.all(np.isfinite(grid)):
            raise ValueError("grid must be finite")
        if grid.size > 1 and not np.all(np.diff(grid) > 0.0):
            raise ValueError("grid must be strictly increasing")
        object.__setattr__(self, "grid", grid)

        domain = self.domain
        if domain is None:
            domain = (float(grid[0]), float(grid[-1]))
        lo, hi = float(domain[0]), float(domain[1])
        if grid[0] < lo or grid[-1] > hi:
            raise ValueError("grid must be contained in the domain")
        object.__setattr__(self, "domain", (lo, hi))

        if (self.func is None) == (self.values is None):
            raise ValueError("exactly one of func or values is required")
        if self.values is not None:
            values = np.asarray(self.values, dtype=np.float64)
            if values.shape != grid.shape:
                raise ValueError("values must align with the grid")
            object.__setattr__(self, "values", values)

    @classmethod
    def from_samples(cls, times, values) -> "CapitalEvolution":
        return cls(grid=np.asarray(times, dtype=np.float64), values=values)

    def values_on_grid(self) -> np.ndarray:
        if self.values is not None:
            return self.values
        return eval_on_grid(self.func, self.grid)

    def derivative_at(self, t: float, step: float = FD_STEP) -> float:
        if self.derivative is not None:
            return float(self.derivative(t))
        if self.func is None:
            raise DomainError("sample-only evolution has no derivative")
        return fd_derivative(self.func, t, step)


@dataclass(frozen=True)
class TraceReport:
    """Verdict of the trace test, with the sampled inverse map on success."""

    is_trace: bool
    witness: Optional[np.ndarray] = None  # shape (n, 2): time, projected capital
    failure_reason: Optional[str] = None  # injectivity | surjectivity | projection mismatch


def trace_test(
    M: CapitalEvolution,
    i: Rate,
    targets: tuple[float, float],
    tol: float = DEFAULT_TOL,
) -> TraceReport:
    """Decide whether a sampled evolution traces a section over ``targets``.

    Projects the samples to ``v(t) = M(t) * u**(-t)``, requires ``v``
    strictly monotone on the grid (injectivity) and its range to cover
    the target interval at grid resolution (surjectivity).  Failures are
    reported, never raised.
    """
    lo, hi = float(targets[0]), float(targets[1])
    if not (lo <= hi):
        raise ValueError(f"empty target interval ({lo!r}, {hi!r})")

    values = M.values_on_grid()
    with np.errstate(over="ignore", invalid="ignore"):
        v = values * np.power(i.u, -M.grid)
    if not np.all(np.isfinite(v)):
        return TraceReport(False, None, "projection mismatch")

    if backend.monotone_direction(v, tol) == 0:
        return TraceReport(False, None, "injectivity")

    vmin = float(v.min())
    vmax = float(v.max())
    if vmin > lo + tol * rel_scale(lo) or vmax < hi - tol * rel_scale(hi):
        return TraceReport(False, None, "surjectivity")

    return TraceReport(True, np.column_stack((M.grid, v)), None)


def decreasing_evolution_shortcut(M: CapitalEvolution, i: Rate) -> bool:
    """Sufficient trace condition for positive evolutions at positive rates.

    With ``i > 0`` and ``M > 0``, a strictly negative ``M'`` forces the
    projected path ``v`` to decrease strictly, so the graph traces a
    section over the positive capitals it reaches.  Returns whether
    ``M' < 0`` holds at every grid point; the rate precondition is
    enforced, a zero derivative anywhere returns False.
    """
    if not (i.i > 0.0):
        raise DomainError("shortcut applies to strictly positive rates only")
    values = M.values_on_grid()
    if np.any(values <= 0.0):
        raise DomainError("shortcut requires a strictly positive evolution")
    for t in M.grid:
        if not (M.derivative_at(float(t)) < 0.0):
            return False
    return True
