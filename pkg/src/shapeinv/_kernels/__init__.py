"""Numeric kernels: compiled extension when available, pure Python otherwise."""

try:
    from ._fast import IMPLEMENTATION, numerov, sturm_count, tridiag_solve
except ImportError:  # pragma: no cover - depends on build environment
    from ._slow import IMPLEMENTATION, numerov, sturm_count, tridiag_solve

__all__ = ["IMPLEMENTATION", "sturm_count", "tridiag_solve", "numerov"]
