"""Kernel backend selection.

The batch kernels exist twice: numba-compiled (``_kernels_numba``) and
pure numpy (``_kernels_numpy``).  The environment variable
``FINFIBER_BACKEND`` picks one:

* unset or ``auto`` -- numba when importable, numpy otherwise;
* ``numpy``         -- force the pure-numpy fallback;
* ``numba``         -- require numba, fail loudly if it is missing.

Selection happens once at import.  ``python -m finfiber.benchmark``
times both implementations side by side regardless of the flag.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "active_backend",
    "accumulate",
    "project",
    "rate_change",
    "monotone_direction",
]

_ENV_VAR = "FINFIBER_BACKEND"


def _load():
    choice = os.environ.get(_ENV_VAR, "auto").strip().lower() or "auto"
    if choice not in ("auto", "numba", "numpy"):
        raise ValueError(
            f"{_ENV_VAR} must be 'auto', 'numba' or 'numpy', got {choice!r}"
        )
    if choice == "numpy":
        from . import _kernels_numpy as impl

        return impl, "numpy"
    if choice == "numba":
        from . import _kernels_numba as impl

        return impl, "numba"
    try:
        from . import _kernels_numba as impl

        return impl, "numba"
    except ImportError:
        from . import _kernels_numpy as impl

        return impl, "numpy"


_impl, _name = _load()


def active_backend() -> str:
    """Name of the backend selected at import: ``"numba"`` or ``"numpy"``."""
    return _name


def _as_array(values) -> np.ndarray:
    return np.ascontiguousarray(values, dtype=np.float64)


def accumulate(times, base_capital: float, u: float) -> np.ndarray:
    """``base_capital * u**t`` elementwise over ``times``."""
    return _impl.accumulate(_as_array(times), float(base_capital), float(u))


def project(times, capitals, u: float) -> np.ndarray:
    """``u**(-t) * c`` elementwise over aligned ``times`` and ``capitals``."""
    t = _as_array(times)
    c = _as_array(capitals)
    if t.shape != c.shape:
        raise ValueError("times and capitals must have the same shape")
    return _impl.project(t, c, float(u))


def rate_change(times, capitals, u_from: float, u_to: float) -> np.ndarray:
    """``(u_to/u_from)**t * c`` elementwise over aligned arrays."""
    t = _as_array(times)
    c = _as_array(capitals)
    if t.shape != c.shape:
        raise ValueError("times and capitals must have the same shape")
    return _impl.rate_change(t, c, float(u_from), float(u_to))


def monotone_direction(values, tol: float) -> int:
    """Strict-monotonicity scan with tolerance ties; +1, -1 or 0."""
    return int(_impl.monotone_direction(_as_array(values), float(tol)))
