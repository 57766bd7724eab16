"""Rate-change isomorphisms between induced fibrations, and trivialization.

Changing the rate from ``i`` to ``i'`` maps an event ``(t, c)`` to
``(t, (u'/u)**t * c)`` with ``u = 1+i``, ``u' = 1+i'``; present values
are preserved, so the map carries fibers to fibers.  Every induced
fibration is globally a product: ``trivialize`` is the chart
``(t, c) -> (t, present value)`` and ``untrivialize`` its inverse.
"""

from __future__ import annotations

import math

import numpy as np

from . import backend
from .core import FinancialEvent, RangeError, Rate
from .fibration import project_compound

__all__ = [
    "rate_isomorphism",
    "rate_isomorphism_many",
    "trivialize",
    "untrivialize",
]


def rate_isomorphism(e: FinancialEvent, i: Rate, i_prime: Rate) -> FinancialEvent:
    """Carry an event from the rate-``i`` fibration to the rate-``i_prime`` one."""
    try:
        factor = (i_prime.u / i.u) ** e.time
    except OverflowError:
        raise RangeError("rate change overflowed") from None
    capital = factor * e.capital
    if math.isinf(capital):
        raise RangeError("rate change overflowed")
    return FinancialEvent(e.time, capital)


def rate_isomorphism_many(times, capitals, i: Rate, i_prime: Rate) -> np.ndarray:
    """Batch capitals of ``rate_isomorphism`` over aligned arrays."""
    return backend.rate_change(times, capitals, i.u, i_prime.u)


def trivialize(e: FinancialEvent, i: Rate) -> tuple[float, float]:
    """Product chart for the induced fibration: (time, base capital)."""
    return (e.time, project_compound(e, i))


def untrivialize(t: float, base_capital: float, i: Rate) -> FinancialEvent:
    """Inverse chart: rebuild the event of a fiber at a time."""
    try:
        factor = i.u ** t
    except OverflowError:
        raise RangeError("chart inverse overflowed") from None
    capital = factor * base_capital
    if math.isinf(capital):
        raise RangeError("chart inverse overflowed")
    return FinancialEvent(t, capital)
