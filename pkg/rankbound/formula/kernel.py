from __future__ import annotations

import math
import typing as t
from dataclasses import dataclass

import numpy as np

__all__ = "KernelParams", "fejer_kernel", "fejer_hat", "MAX_DELTA"

MAX_DELTA = 8.0

RealOrArray = t.Union[float, np.ndarray]


@dataclass(frozen=True)
class KernelParams:
    """Width parameter of the test function f(t; delta) = sinc(delta t)^2.

    The Fourier transform is supported on [-delta, delta], so the prime sum
    stops at exp(2 pi delta) and its cost grows exponentially with delta.
    """

    delta: float

    def __post_init__(self):
        if not 0 < self.delta <= MAX_DELTA:
            raise ValueError(f"Delta should lie in (0, {MAX_DELTA}], got {self.delta!r}")

    @property
    def log_x_max(self) -> float:
        return 2 * math.pi * self.delta

    @property
    def x_max(self) -> int:
        """ Largest integer not exceeding exp(2 pi delta) """
        return math.floor(math.exp(self.log_x_max))


def fejer_kernel(t_: RealOrArray, params: KernelParams) -> RealOrArray:
    # np.sinc(x) = sin(pi x) / (pi x), with the removable singularity filled in
    value = np.sinc(params.delta * np.asarray(t_, dtype=np.float64)) ** 2
    return value if value.ndim else float(value)


def fejer_hat(x: RealOrArray, params: KernelParams) -> RealOrArray:
    delta = params.delta
    distance = np.abs(np.asarray(x, dtype=np.float64))
    value = np.where(distance < delta, (1.0 - distance / delta) / delta, 0.0)
    return value if value.ndim else float(value)
