"""Parallel transport, the induced connection, and force of interest.

A discount law ``F`` moves events along time: the financial translation
``(t, c) -> (t + h, F(h)**-1 * c)`` is a linear isomorphism between
fibers of the natural fibration.  Its derivative at zero displacement
is governed by a single number ``F'(0)``, packaged as the bilinear form
``(k, c) -> F'(0) * k * c``; the connection lifts a time vector ``k``
at an event to the tangent vector ``(k, -F'(0) * k * c)``.

A capitalization law induces a local discount law at every time ``t``
via ``F(h) = u(t) / u(t+h)``, and the lift coefficient there is exactly
the force of interest ``u'(t)/u(t)`` -- constant precisely for compound
growth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    DEFAULT_TOL,
    CapitalizationLaw,
    DiscountLaw,
    DomainError,
    FiberMismatchError,
    FinancialEvent,
    InvalidLawError,
    TangentVector,
    rel_close,
)

__all__ = [
    "ChristoffelForm",
    "financial_translate",
    "translation_derivative",
    "christoffel_from_discount",
    "discount_from_christoffel",
    "connection_apply",
    "global_connection",
    "induced_discount",
    "force_of_interest",
    "verify_force_relation",
]


@dataclass(frozen=True)
class ChristoffelForm:
    """The bilinear lift coefficient at one time: ``(k, c) -> gamma * k * c``.

    ``derivative_source`` records whether gamma came from an analytic
    derivative or a finite difference, for tolerance diagnostics.
    """

    time: float
    gamma: float
    derivative_source: str = "analytic"

    def apply(self, k: float, c: float) -> float:
        return self.gamma * k * c


def financial_translate(e: FinancialEvent, h: float, F: DiscountLaw) -> FinancialEvent:
    """Transport an event by a time displacement: ``(t+h, F(h)**-1 * c)``."""
    if abs(h) > F.radius:
        raise DomainError(f"displacement {h!r} exceeds the law radius {F.radius!r}")
    factor = F(h)
    if not math.isfinite(factor) or factor <= 0.0:
        raise InvalidLawError(f"discount factor {factor!r} at h={h!r} is not positive")
    return FinancialEvent(e.time + h, e.capital / factor)


def translation_derivative(
    F: DiscountLaw, c: float, k: float, v: float
) -> tuple[float, float]:
    """Derivative of the transport map at zero displacement.

    The map ``(h, c) -> (t+h, F(h)**-1 * c)`` has derivative
    ``(k, v) -> (k, v - F'(0)*k*c)`` at ``(0, c)``.
    """
    return (k, v - F.derivative_at(0.0) * k * c)


def christoffel_from_discount(F: DiscountLaw, t: float) -> ChristoffelForm:
    """The lift coefficient of a discount law: ``gamma = F'(0)``."""
    source = "analytic" if F.has_analytic_derivative else "finite-difference"
    return ChristoffelForm(time=t, gamma=F.derivative_at(0.0), derivative_source=source)


def discount_from_christoffel(G: ChristoffelForm) -> DiscountLaw:
    """The linear discount law ``F(h) = 1 + gamma*h`` recovering ``G``.

    The radius is ``min(1, 0.5/|gamma|)`` so the factor stays positive
    on the whole neighborhood.
    """
    gamma = G.gamma
    radius = 1.0 if gamma == 0.0 else min(1.0, 0.5 / abs(gamma))
    return DiscountLaw(
        func=lambda h: 1.0 + gamma * h,
        derivative=lambda h: gamma,
        radius=radius,
        name="linear",
    )


def connection_apply(
    G: ChristoffelForm, k: float, e: FinancialEvent, tol: float = DEFAULT_TOL
) -> TangentVector:
    """Horizontal lift of the time vector ``k`` through an event on the form's fiber."""
    if not rel_close(e.time, G.time, tol):
        raise FiberMismatchError(
            f"event at time {e.time!r} is not on the fiber at {G.time!r}"
        )
    return TangentVector(base=e, k=k, v=-G.gamma * k * e.capital)


def induced_discount(
    u: CapitalizationLaw, t: float, radius: float | None = None
) -> DiscountLaw:
    """Local discount law of a capitalization law at time ``t``.

    Transporting by ``h`` under ``u`` multiplies capital by
    ``u(t+h)/u(t)``, so the discount factor is ``F(h) = u(t)/u(t+h)``.
    The default radius is the distance from ``t`` to the boundary of the
    law's domain.
    """
    if not u.contains(t):
        raise DomainError(f"time {t!r} outside the law domain {u.domain!r}")
    at_t = u(t)
    if not math.isfinite(at_t) or at_t <= 0.0:
        raise InvalidLawError(f"factor {at_t!r} at t={t!r} is not positive")
    if radius is None:
        lo, hi = u.domain
        radius = min(t - lo, hi - t)

    def factor(h: float) -> float:
        ahead = u(t + h)
        if not math.isfinite(ahead) or ahead <= 0.0:
            raise InvalidLawError(f"factor {ahead!r} at t+h={t + h!r} is not positive")
        return at_t / ahead

    derivative = None
    if u.has_analytic_derivative:
        # F(h) = u(t) * u(t+h)**-1, so F'(h) = -u(t) * u'(t+h) / u(t+h)**2.
        def derivative(h: float) -> float:
            ahead = u(t + h)
            return -at_t * u.derivative_at(t + h) / (ahead * ahead)

    return DiscountLaw(func=factor, derivative=derivative, radius=radius, name="induced")


def global_connection(u: CapitalizationLaw, k: float, e: FinancialEvent) -> TangentVector:
    """Horizontal lift at any event, via the law's local discount at its time."""
    F = induced_discount(u, e.time)
    G = christoffel_from_discount(F, e.time)
    return connection_apply(G, k, e)


def force_of_interest(u: CapitalizationLaw, t: float) -> float:
    """Instantaneous growth rate ``u'(t)/u(t)`` of a capitalization law."""
    at_t = u(t)
    if not math.isfinite(at_t) or at_t <= 0.0:
        raise InvalidLawError(f"factor {at_t!r} at t={t!r} is not positive")
    return u.derivative_at(t) / at_t


def verify_force_relation(
    u: CapitalizationLaw, t: float, k: float, c: float, tol: float = DEFAULT_TOL
) -> bool:
    """Check that the lift coefficient reproduces the force of interest.

    The negated form applied to ``(k, c)`` must equal
    ``force_of_interest(u, t) * k * c``.
    """
    G = christoffel_from_discount(induced_discount(u, t), t)
    lhs = -G.apply(k, c)
    rhs = force_of_interest(u, t) * k * c
    return rel_close(lhs, rhs, tol)
