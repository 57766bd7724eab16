"""Foundation types and the shared finite-difference engine.

Everything downstream works over the plane of financial events: a point
``(t, c)`` pairs a time (years, possibly negative) with a capital (any
sign).  Growth and discounting are expressed by closure-valued laws, a
``CapitalizationLaw`` mapping a time displacement ``h`` to a factor
``u(h)`` with ``u(0) = 1``, and a ``DiscountLaw`` giving the backward
factor ``F(h)`` on a neighborhood of 0.  Laws may carry an analytic
derivative; when they do not, a fourth-order central difference stands
in automatically.

All values are immutable and all operations pure.  Equality in every
structural check means relative error at most a caller-supplied
tolerance (default ``DEFAULT_TOL``), with scale ``max(1, |values|)`` so
that capitals spanning orders of magnitude stay comparable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

__all__ = [
    "DEFAULT_TOL",
    "FD_STEP",
    "FinFiberError",
    "EvaluationError",
    "InvalidLawError",
    "RangeError",
    "DomainError",
    "FiberMismatchError",
    "rel_scale",
    "rel_close",
    "FinancialEvent",
    "Rate",
    "TangentVector",
    "CapitalizationLaw",
    "DiscountLaw",
    "fd_derivative",
    "fd_derivative_one_sided",
    "eval_on_grid",
    "LAW_IDS",
    "make_law",
    "ValidationReport",
    "validate_capitalization_law",
    "validate_discount_law",
]

#: Default relative tolerance for structural equality checks.
DEFAULT_TOL = 1e-9

#: Step substituted when a law has no analytic derivative.
FD_STEP = 1e-5


class FinFiberError(Exception):
    """Base class for library errors."""


class EvaluationError(FinFiberError):
    """A supplied function produced a non-finite value."""


class InvalidLawError(FinFiberError):
    """A law violated positivity or normalization where it was needed."""


class RangeError(FinFiberError):
    """A result overflowed the double range."""


class DomainError(FinFiberError):
    """An input fell outside the domain an operation requires."""


class FiberMismatchError(FinFiberError):
    """Two objects that must live on the same fiber do not."""


def rel_scale(*values: float) -> float:
    """Comparison scale ``max(1, |values|)``."""
    scale = 1.0
    for v in values:
        a = abs(v)
        if a > scale:
            scale = a
    return scale


def rel_close(a: float, b: float, tol: float = DEFAULT_TOL) -> bool:
    """True when ``|a - b| <= tol * max(1, |a|, |b|)``.

    NaN on either side is never close to anything.
    """
    if math.isnan(a) or math.isnan(b):
        return False
    if a == b:
        return True
    return abs(a - b) <= tol * rel_scale(a, b)


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class FinancialEvent:
    """A point ``(t, c)`` of the event plane: time and capital."""

    time: float
    capital: float

    def __post_init__(self):
        object.__setattr__(self, "time", _require_finite("time", self.time))
        object.__setattr__(self, "capital", _require_finite("capital", self.capital))


@dataclass(frozen=True)
class Rate:
    """A per-period interest rate ``i > -1`` with accumulation ``u = 1 + i``."""

    i: float

    def __post_init__(self):
        i = _require_finite("rate", self.i)
        if i <= -1.0:
            raise ValueError(f"rate must exceed -1, got {i!r}")
        object.__setattr__(self, "i", i)

    @property
    def u(self) -> float:
        return 1.0 + self.i


@dataclass(frozen=True)
class TangentVector:
    """A tangent vector at an event: time component ``k``, capital component ``v``."""

    base: FinancialEvent
    k: float
    v: float

    def __post_init__(self):
        object.__setattr__(self, "k", _require_finite("k", self.k))
        object.__setattr__(self, "v", _require_finite("v", self.v))


def fd_derivative(f: Callable[[float], float], x: float, step: float) -> float:
    """Fourth-order central-difference derivative of ``f`` at ``x``.

    Uses the Richardson-extrapolated stencil on ``f(x +- step)`` and
    ``f(x +- 2*step)``; exact for polynomials up to degree four, error
    ``O(step**4)`` for smoother functions.

    Raises ``EvaluationError`` if any stencil evaluation is non-finite
    and ``ValueError`` for a non-positive step.
    """
    if not (step > 0.0) or not math.isfinite(step):
        raise ValueError(f"step must be positive and finite, got {step!r}")
    h = float(step)
    f1 = float(f(x - 2.0 * h))
    f2 = float(f(x - h))
    f3 = float(f(x + h))
    f4 = float(f(x + 2.0 * h))
    for v in (f1, f2, f3, f4):
        if not math.isfinite(v):
            raise EvaluationError(f"non-finite evaluation near x={x!r}")
    return (f1 - 8.0 * f2 + 8.0 * f3 - f4) / (12.0 * h)


def fd_derivative_one_sided(
    f: Callable[[float], float], x: float, step: float, side: int = 1
) -> float:
    """Second-order one-sided derivative at ``x``.

    ``side=+1`` uses points to the right of ``x``, ``side=-1`` to the
    left; needed where a function is only defined on one side (half-line
    laws, gluing checks at 0).
    """
    if side not in (1, -1):
        raise ValueError("side must be +1 or -1")
    if not (step > 0.0) or not math.isfinite(step):
        raise ValueError(f"step must be positive and finite, got {step!r}")
    h = side * float(step)
    f0 = float(f(x))
    f1 = float(f(x + h))
    f2 = float(f(x + 2.0 * h))
    for v in (f0, f1, f2):
        if not math.isfinite(v):
            raise EvaluationError(f"non-finite evaluation near x={x!r}")
    return (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h)


def eval_on_grid(f: Callable[[float], float], grid: np.ndarray) -> np.ndarray:
    """Evaluate a scalar callable on a grid, tolerating non-vectorized closures."""
    grid = np.asarray(grid, dtype=np.float64)
    try:
        out = np.asarray(f(grid), dtype=np.float64)
    except (TypeError, ValueError):
        return np.array([float(f(x)) for x in grid], dtype=np.float64)
    if out.shape == grid.shape:
        return out
    if out.ndim == 0:
        return np.full_like(grid, float(out))
    return np.array([float(f(x)) for x in grid], dtype=np.float64)


@dataclass(frozen=True)
class CapitalizationLaw:
    """A growth law ``h -> u(h)`` with ``u(0) = 1`` on an interval around 0.

    ``func`` evaluates the factor; ``derivative``, when given, is the
    analytic ``u'``.  ``domain`` is the open interval on which the law
    is positive and evaluable; it must contain 0.
    """

    func: Callable[[float], float]
    derivative: Optional[Callable[[float], float]] = None
    domain: tuple[float, float] = (-math.inf, math.inf)
    name: str = ""

    def __post_init__(self):
        lo, hi = self.domain
        if not (lo < 0.0 < hi):
            raise ValueError(f"domain must contain 0, got {self.domain!r}")

    def __call__(self, h: float) -> float:
        return float(self.func(h))

    def contains(self, h: float) -> bool:
        lo, hi = self.domain
        return lo < h < hi

    @property
    def has_analytic_derivative(self) -> bool:
        return self.derivative is not None

    def derivative_at(self, h: float, step: float = FD_STEP) -> float:
        """Analytic derivative when present, else central finite difference."""
        if self.derivative is not None:
            return float(self.derivative(h))
        return fd_derivative(self.func, h, step)


@dataclass(frozen=True)
class DiscountLaw:
    """A backward factor ``h -> F(h)`` with ``F(0) = 1`` near 0.

    ``radius`` is the half-width of the neighborhood of 0 on which the
    law is meant to hold (``inf`` allowed); translations beyond it are
    refused.
    """

    func: Callable[[float], float]
    derivative: Optional[Callable[[float], float]] = None
    radius: float = math.inf
    name: str = ""

    def __post_init__(self):
        if not (self.radius > 0.0):
            raise ValueError(f"radius must be positive, got {self.radius!r}")

    def __call__(self, h: float) -> float:
        return float(self.func(h))

    @property
    def has_analytic_derivative(self) -> bool:
        return self.derivative is not None

    def derivative_at(self, h: float, step: float = FD_STEP) -> float:
        if self.derivative is not None:
            return float(self.derivative(h))
        return fd_derivative(self.func, h, step)


# ---------------------------------------------------------------------------
# Built-in law registry.  Identifiers are stable strings shared with the CLI.

LAW_IDS = ("compound", "simple", "exp-force")


def _make_compound(i: float) -> CapitalizationLaw:
    u = Rate(i).u
    log_u = math.log(u)
    return CapitalizationLaw(
        func=lambda h: u**h,
        derivative=lambda h: log_u * u**h,
        domain=(-math.inf, math.inf),
        name="compound",
    )


def _make_simple(i: float) -> CapitalizationLaw:
    i = _require_finite("simple-rate", i)
    if i > 0.0:
        domain = (-1.0 / i, math.inf)
    elif i < 0.0:
        domain = (-math.inf, -1.0 / i)
    else:
        domain = (-math.inf, math.inf)
    return CapitalizationLaw(
        func=lambda h: 1.0 + i * h,
        derivative=lambda h: i,
        domain=domain,
        name="simple",
    )


def _make_exp_force(delta: float) -> CapitalizationLaw:
    delta = _require_finite("force", delta)
    return CapitalizationLaw(
        func=lambda h: math.exp(delta * h),
        derivative=lambda h: delta * math.exp(delta * h),
        domain=(-math.inf, math.inf),
        name="exp-force",
    )


_REGISTRY = {
    "compound": _make_compound,
    "simple": _make_simple,
    "exp-force": _make_exp_force,
}


def make_law(law_id: str, param: float) -> CapitalizationLaw:
    """Build a registry law: ``compound`` and ``simple`` take a rate,
    ``exp-force`` a constant force of interest."""
    try:
        factory = _REGISTRY[law_id]
    except KeyError:
        raise ValueError(f"unknown law {law_id!r}; expected one of {LAW_IDS}") from None
    return factory(float(param))


# ---------------------------------------------------------------------------
# Law validation.  Violations are report entries, never exceptions:
# C^1 membership is not decidable from samples, so the report only
# claims plausibility (finite difference stable across two step sizes).

_C1_STEPS = (1e-4, 1e-5)
_C1_STABILITY_TOL = 1e-6


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = ()
    c1_plausible: bool = True

    @property
    def valid(self) -> bool:
        return not self.violations


def _validate_law_on_grid(law, grid: np.ndarray) -> ValidationReport:
    violations: list[str] = []

    at_zero = law(0.0)
    if at_zero != 1.0:
        violations.append(f"factor at 0 is {at_zero!r}, expected 1")

    for h in grid:
        h = float(h)
        try:
            value = law(h)
        except Exception as exc:
            violations.append(f"evaluation failed at h={h!r}: {exc}")
            continue
        if not math.isfinite(value):
            violations.append(f"non-finite value {value!r} at h={h!r}")
        elif value <= 0.0:
            violations.append(f"non-positive value {value!r} at h={h!r}")

    c1_plausible = True
    for h in grid:
        h = float(h)
        estimates = []
        for step in _C1_STEPS:
            try:
                estimates.append(fd_derivative(law.func, h, step))
            except Exception as exc:
                violations.append(f"derivative estimate failed at h={h!r}: {exc}")
                c1_plausible = False
                break
        if len(estimates) == 2:
            d1, d2 = estimates
            if abs(d1 - d2) > _C1_STABILITY_TOL * rel_scale(d1, d2):
                c1_plausible = False

    return ValidationReport(tuple(violations), c1_plausible)


def validate_capitalization_law(
    law: CapitalizationLaw, grid: np.ndarray
) -> ValidationReport:
    """Check ``u(0)=1``, positivity, and C1 plausibility on a sample grid."""
    grid = np.asarray(grid, dtype=np.float64)
    if grid.size == 0:
        raise ValueError("grid must be nonempty")
    lo, hi = law.domain
    if grid.min() <= lo or grid.max() >= hi:
        raise DomainError(f"grid leaves the law domain {law.domain!r}")
    return _validate_law_on_grid(law, grid)


def validate_discount_law(law: DiscountLaw, grid: np.ndarray) -> ValidationReport:
    """Same checks as for capitalization laws, with the grid bounded by the radius."""
    grid = np.asarray(grid, dtype=np.float64)
    if grid.size == 0:
        raise ValueError("grid must be nonempty")
    if np.abs(grid).max() > law.radius:
        raise DomainError(f"grid exceeds the law radius {law.radius!r}")
    return _validate_law_on_grid(law, grid)
