"""Benchmark the numba kernels against the pure-numpy fallback.

Runs every batch kernel on both implementations (ignoring the
``FINFIBER_BACKEND`` flag), reports best-of-N wall times and the
speedup.  The numba kernels are warmed before timing so JIT
compilation never lands inside a measurement.

    python -m finfiber.benchmark --size 1000000 --repeats 5
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from . import _kernels_numpy

try:
    from . import _kernels_numba
except ImportError:
    _kernels_numba = None


def _cases(size: int, rng: np.random.Generator):
    times = rng.uniform(-20.0, 20.0, size)
    capitals = rng.uniform(-1000.0, 1000.0, size)
    monotone = np.cumsum(rng.uniform(1e-6, 1.0, size))
    return [
        ("accumulate", lambda impl: impl.accumulate(times, 100.0, 1.1)),
        ("project", lambda impl: impl.project(times, capitals, 1.1)),
        ("rate_change", lambda impl: impl.rate_change(times, capitals, 1.1, 1.21)),
        ("monotone_direction", lambda impl: impl.monotone_direction(monotone, 1e-9)),
    ]


def _best_time(run, impl, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        run(impl)
        best = min(best, time.perf_counter() - start)
    return best


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="Compare kernel backends.")
    parser.add_argument("--size", type=int, default=1_000_000, help="array length")
    parser.add_argument("--repeats", type=int, default=5, help="timed runs per kernel")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    cases = _cases(args.size, rng)

    if _kernels_numba is None:
        print("numba unavailable; timing the numpy fallback only", file=sys.stderr)

    print(f"kernel benchmark: size={args.size} repeats={args.repeats}")
    header = f"{'kernel':<20}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, run in cases:
        t_np = _best_time(run, _kernels_numpy, args.repeats)
        if _kernels_numba is None:
            print(f"{name:<20}{t_np:>12.6f}{'-':>12}{'-':>10}")
            continue
        run(_kernels_numba)  # warmup: compile outside the timer
        t_nb = _best_time(run, _kernels_numba, args.repeats)
        speedup = t_np / t_nb if t_nb > 0 else float("inf")
        print(f"{name:<20}{t_np:>12.6f}{t_nb:>12.6f}{speedup:>9.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
