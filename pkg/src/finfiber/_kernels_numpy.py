"""Pure-numpy batch kernels (fallback backend).

Same signatures and semantics as the numba twins in
``_kernels_numba``; ``backend`` picks one of the two at import time.
"""

import numpy as np


def accumulate(times, base_capital, u):
    """Grow ``base_capital`` along a fiber: ``base_capital * u**t`` elementwise."""
    return base_capital * np.power(u, times)


def project(times, capitals, u):
    """Present value of each event: ``u**(-t) * c`` elementwise."""
    return np.power(u, -times) * capitals


def rate_change(times, capitals, u_from, u_to):
    """Move events between induced fibrations: ``(u_to/u_from)**t * c``."""
    return np.power(u_to / u_from, times) * capitals


def monotone_direction(values, tol):
    """+1 if strictly increasing, -1 if strictly decreasing, else 0.

    A consecutive pair counts as a tie (hence neither direction) when
    its gap is within ``tol * max(1, |a|, |b|)``.
    """
    if values.shape[0] < 2:
        return 1
    a = values[:-1]
    b = values[1:]
    margin = tol * np.maximum(1.0, np.maximum(np.abs(a), np.abs(b)))
    diff = b - a
    if np.all(diff > margin):
        return 1
    if np.all(diff < -margin):
        return -1
    return 0
