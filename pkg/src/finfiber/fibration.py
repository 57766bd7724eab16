"""Two ways of fibering the event plane, plus fibers as equivalence classes.

The natural projection keeps the time coordinate.  The compound-induced
projection sends an event to its present value at rate ``i``, so its
fibers are the growth curves ``t -> (1+i)**t * c0``; two events are
equivalent when they project to the same base capital.  A general
positive factor given on the nonnegative half-line induces the same
construction piecewise, dividing forward in time and multiplying
backward.

Fibers are represented by the pair (rate, base capital): the class of
an event is infinite, but the pair is a complete invariant of it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import backend
from .core import (
    DEFAULT_TOL,
    CapitalizationLaw,
    FinancialEvent,
    FiberMismatchError,
    InvalidLawError,
    RangeError,
    Rate,
    fd_derivative_one_sided,
    rel_close,
)

__all__ = [
    "Fiber",
    "project_natural",
    "project_compound",
    "project_compound_many",
    "project_general",
    "general_gluing_check",
    "equivalent",
    "fiber_of",
    "fiber_eval",
    "fiber_eval_many",
    "fiber_compare",
]


@dataclass(frozen=True)
class Fiber:
    """An equivalence class of events at a rate, keyed by its value at time 0."""

    rate: Rate
    base_capital: float


def _checked(value: float, what: str) -> float:
    if math.isinf(value):
        raise RangeError(f"{what} overflowed")
    return value


def project_natural(e: FinancialEvent) -> float:
    """First-coordinate projection: the time of the event."""
    return e.time


def project_compound(e: FinancialEvent, i: Rate) -> float:
    """Present value at time 0 under compound growth: ``(1+i)**(-t) * c``."""
    try:
        factor = i.u ** (-e.time)
    except OverflowError:
        raise RangeError("projection overflowed") from None
    return _checked(factor * e.capital, "projection")


def project_compound_many(times, capitals, i: Rate) -> np.ndarray:
    """Batch form of ``project_compound`` over aligned arrays."""
    return backend.project(times, capitals, i.u)


def project_general(e: FinancialEvent, f: CapitalizationLaw) -> float:
    """Projection induced by a factor given on the nonnegative half-line.

    Divides by ``f(t)`` for ``t >= 0`` and multiplies by ``f(-t)`` for
    ``t < 0``; the two branches glue to first order at 0 because both
    one-sided derivatives there equal ``-f'(0)``.
    """
    t = e.time
    value = f(t) if t >= 0.0 else f(-t)
    if not math.isfinite(value) or value <= 0.0:
        raise InvalidLawError(f"factor {value!r} at |t|={abs(t)!r} is not positive")
    if t >= 0.0:
        return _checked(e.capital / value, "projection")
    return _checked(value * e.capital, "projection")


def general_gluing_check(
    f: CapitalizationLaw, tol: float = 1e-6, step: float = 1e-4
) -> bool:
    """Verify the two piecewise branches meet smoothly at time 0.

    Estimates the one-sided derivatives of ``t -> f(t)**-1`` (right) and
    ``t -> f(-t)`` (left) at 0 and compares both against ``-f'(0)``.
    """
    if f.has_analytic_derivative:
        target = -f.derivative_at(0.0)
    else:
        # f may only exist on the nonnegative side, so stay one-sided.
        target = -fd_derivative_one_sided(f.func, 0.0, step, side=1)
    forward = fd_derivative_one_sided(lambda t: 1.0 / f(t), 0.0, step, side=1)
    backward = fd_derivative_one_sided(lambda t: f(-t), 0.0, step, side=-1)
    return rel_close(forward, target, tol) and rel_close(backward, target, tol)


def equivalent(
    e1: FinancialEvent, e2: FinancialEvent, i: Rate, tol: float = DEFAULT_TOL
) -> bool:
    """Whether two events lie on the same fiber at rate ``i``."""
    return rel_close(project_compound(e1, i), project_compound(e2, i), tol)


def fiber_of(e: FinancialEvent, i: Rate) -> Fiber:
    """The fiber through an event: its equivalence class at rate ``i``."""
    return Fiber(rate=i, base_capital=project_compound(e, i))


def fiber_eval(fb: Fiber, t: float) -> float:
    """Capital of the fiber's growth curve at time ``t``."""
    try:
        factor = fb.rate.u ** t
    except OverflowError:
        raise RangeError("fiber evaluation overflowed") from None
    return _checked(factor * fb.base_capital, "fiber evaluation")


def fiber_eval_many(fb: Fiber, times) -> np.ndarray:
    """Batch form of ``fiber_eval`` over an array of times."""
    return backend.accumulate(times, fb.base_capital, fb.rate.u)


def fiber_compare(a: Fiber, b: Fiber, tol: float = DEFAULT_TOL) -> int:
    """Order two same-rate fibers by base capital: -1, 0 or +1.

    This is the present-value preorder on fibers; capitals within the
    tolerance count as equal.  Fibers at different rates are not
    comparable.
    """
    if a.rate != b.rate:
        raise FiberMismatchError(
            f"cannot compare fibers at rates {a.rate.i!r} and {b.rate.i!r}"
        )
    if rel_close(a.base_capital, b.base_capital, tol):
        return 0
    return -1 if a.base_capital < b.base_capital else 1
