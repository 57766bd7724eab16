"""Numba-compiled batch kernels (default backend).

Loops are fused so the hot paths allocate one output array and no
temporaries.  ``cache=True`` persists the compiled kernels on disk, so
only the first process ever pays the JIT cost.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def accumulate(times, base_capital, u):
    out = np.empty_like(times)
    for idx in range(times.shape[0]):
        out[idx] = base_capital * u ** times[idx]
    return out


@njit(cache=True)
def project(times, capitals, u):
    out = np.empty_like(times)
    for idx in range(times.shape[0]):
        out[idx] = u ** (-times[idx]) * capitals[idx]
    return out


@njit(cache=True)
def rate_change(times, capitals, u_from, u_to):
    ratio = u_to / u_from
    out = np.empty_like(times)
    for idx in range(times.shape[0]):
        out[idx] = ratio ** times[idx] * capitals[idx]
    return out


@njit(cache=True)
def monotone_direction(values, tol):
    n = values.shape[0]
    if n < 2:
        return 1
    rising = True
    falling = True
    for idx in range(n - 1):
        a = values[idx]
        b = values[idx + 1]
        scale = 1.0
        if abs(a) > scale:
            scale = abs(a)
        if abs(b) > scale:
            scale = abs(b)
        diff = b - a
        margin = tol * scale
        if diff <= margin:
            rising = False
        if diff >= -margin:
            falling = False
        if not rising and not falling:
            return 0
    if rising:
        return 1
    if falling:
        return -1
    return 0
