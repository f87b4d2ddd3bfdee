"""Benchmark the compiled numeric kernels against the pure-Python fallback.

Runs each kernel (Sturm eigenvalue count, symmetric tridiagonal solve,
Numerov integration) on identical inputs through both implementations,
checks that the results agree, and reports per-call timings and speedups.

Usage:
    python benchmarks/bench_kernels.py [--size N] [--repeats R]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from shapeinv._kernels import _slow

try:
    from shapeinv._kernels import _fast
except ImportError:
    _fast = None


def _time(fn, repeats):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def _bench_case(name, make_call, repeats, agree):
    t_slow, r_slow = _time(make_call(_slow), repeats)
    if _fast is None:
        print(f"{name:<16} python {t_slow * 1e3:9.3f} ms   (no compiled kernel built)")
        return
    t_fast, r_fast = _time(make_call(_fast), repeats)
    ok = agree(r_slow, r_fast)
    print(
        f"{name:<16} python {t_slow * 1e3:9.3f} ms   compiled {t_fast * 1e3:9.3f} ms"
        f"   speedup {t_slow / t_fast:7.1f}x   agree={ok}"
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=20001, help="problem size")
    parser.add_argument("--repeats", type=int, default=5, help="timing repeats")
    args = parser.parse_args()
    n = args.size
    rng = np.random.default_rng(42)

    print(f"kernel implementations: python + {_fast.IMPLEMENTATION if _fast else 'none'}")
    print(f"problem size n={n}, best of {args.repeats} runs\n")

    # Sturm count on a discrete 1D Laplacian plus random diagonal
    d = 2.0 + rng.uniform(0.0, 1.0, n)
    e_sq = np.full(n - 1, 1.0)
    _bench_case(
        "sturm_count",
        lambda mod: (lambda: mod.sturm_count(d, e_sq, 2.5)),
        args.repeats,
        lambda a, b: a == b,
    )

    # tridiagonal solve with constant off-diagonal
    diag = 4.0 + rng.uniform(0.0, 1.0, n)
    rhs = rng.standard_normal(n)
    _bench_case(
        "tridiag_solve",
        lambda mod: (lambda: mod.tridiag_solve(diag, -1.0, rhs)),
        args.repeats,
        lambda a, b: bool(np.allclose(a, b, rtol=1e-12, atol=1e-12)),
    )

    # Numerov integration of y'' = f y for an oscillatory f
    h = 20.0 / (n - 1)
    x = np.linspace(0.0, 20.0, n)
    f = np.cos(x) - 1.5
    _bench_case(
        "numerov",
        lambda mod: (lambda: mod.numerov(f, h, 0.0, 1e-8)),
        args.repeats,
        lambda a, b: bool(np.allclose(a, b, rtol=1e-10, atol=1e-20)),
    )


if __name__ == "__main__":
    main()
