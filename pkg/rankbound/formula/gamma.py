from __future__ import annotations

import functools
import logging
import math
import typing as t

import numpy as np

from ..base import QuadFailure
from .digamma import digamma_re_line
from .kernel import KernelParams, fejer_kernel

__all__ = "gamma_term", "gamma_tail"

logger = logging.getLogger(__name__)

_NODES = 20
_PANEL_BUDGET = 1 << 16


@functools.lru_cache(maxsize=None)
def _gauss_legendre(n: int) -> t.Tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(n)


def _integrate_panels(lo: np.ndarray, hi: np.ndarray, params: KernelParams, n: int) -> np.ndarray:
    nodes, weights = _gauss_legendre(n)
    half, mid = (hi - lo) / 2, (hi + lo) / 2
    points = mid[:, np.newaxis] + half[:, np.newaxis] * nodes
    values = digamma_re_line(points) * fejer_kernel(points, params)
    return half * (values @ weights)


def gamma_tail(height: float, params: KernelParams) -> t.Tuple[float, float]:
    """(1/pi) of the two-sided integral of Re psi(1+it) f(t) over |t| >= height.

    ``height`` must be a zero of the kernel (an integer multiple of 1/delta).
    Re psi(1+it) is replaced by log t, whose integral against
    sin^2(pi delta t) / (pi delta t)^2 is integrated by parts twice; the
    second error term covers the O(1/t^2) gap between Re psi and log t.
    """
    T, omega, scale = height, 2 * math.pi * params.delta, (math.pi * params.delta) ** -2
    log_T = math.log(T)

    mean = (log_T + 1) / T
    oscillating = -(1 - 2 * log_T) / T ** 3 / omega ** 2
    value = scale * (mean - oscillating) / 2

    parts_error = scale * abs(26 - 24 * log_T) / T ** 5 / omega ** 4
    residual_error = scale / (30 * T ** 3)

    return 2 / math.pi * value, 2 / math.pi * (parts_error + residual_error)


@functools.lru_cache(maxsize=64)
def _gamma_term(delta: float, tolerance: float, tail_height: float) -> t.Tuple[float, float]:
    params = KernelParams(delta)
    panels = max(1, math.ceil(tail_height * delta))
    height = panels / delta

    # Kernel zeros k / delta bound the initial panels
    edges = np.arange(panels + 1, dtype=np.float64) / delta
    lo, hi = edges[:-1], edges[1:]

    value, error, used = 0.0, 0.0, panels
    while lo.shape[0]:
        coarse = _integrate_panels(lo, hi, params, _NODES)
        fine = _integrate_panels(lo, hi, params, 2 * _NODES)
        estimate = np.abs(fine - coarse)

        done = estimate <= tolerance * (hi - lo) / height
        value += math.fsum(fine[done])
        error += float(np.sum(estimate[done]))

        mid = (lo[~done] + hi[~done]) / 2
        lo, hi = np.concatenate([lo[~done], mid]), np.concatenate([mid, hi[~done]])
        used += mid.shape[0]
        if used > _PANEL_BUDGET:
            raise QuadFailure(f"Gamma integral for delta={delta} missed {tolerance:g} within {_PANEL_BUDGET} panels")

    tail, tail_error = gamma_tail(height, params)
    logger.debug("Gamma integral for delta=%s: %d panels up to t=%s", delta, used, height)

    return 2 / math.pi * value + tail, 2 / math.pi * error + tail_error


def gamma_term(params: KernelParams, tolerance: float = 1e-8, tail_height: float = 500.0) -> t.Tuple[float, float]:
    """(1/pi) Re of the integral of psi(1+it) f(t; delta) over the real line.

    Returns ``(value, error)``: the integrand is even, so [0, T] is covered by
    adaptive Gauss-Legendre panels between consecutive kernel zeros and the
    rest by the closed-form tail. The error adds the panel estimates to the
    tail remainder bound.
    """
    value, error = _gamma_term(float(params.delta), float(tolerance), float(tail_height))
    if error > tolerance:
        raise QuadFailure(f"Gamma integral error {error:.3g} exceeds {tolerance:g} for delta={params.delta}")
    return value, error
