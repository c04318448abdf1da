from __future__ import annotations

import enum
import logging
import math
import typing as t
from dataclasses import dataclass

from scipy.special import sici

from ..curves import WeierstrassCurve
from ..formula import EFBreakdown, KernelParams, fejer_kernel, zero_sum_bound
from .loader import ZeroList

if t.TYPE_CHECKING:
    from ..settings import Settings

__all__ = (
    "ZeroDensity",
    "VerificationReport",
    "kernel_tail",
    "direct_zero_sum",
    "compare_methods",
    "AGREEMENT_SLACK",
)

logger = logging.getLogger(__name__)

AGREEMENT_SLACK = 1e-5


class ZeroDensity(str, enum.Enum):
    """ How many zeros per unit height are assumed past the last known one """

    Flat = "flat"
    Height = "height"


def kernel_tail(height: float, params: KernelParams) -> float:
    """ Exact integral of f(t; delta) over [height, inf) """
    delta = params.delta
    if height <= 0:
        return 0.5 / delta

    x = math.pi * delta * height
    si, _ = sici(2 * x)
    return (math.sin(x) ** 2 / x + math.pi / 2 - float(si)) / (math.pi * delta)


def _log_tail(height: float, params: KernelParams) -> float:
    # Integral of log t * f(t; delta) over [height, inf), integrating the
    # oscillating half of sin^2 by parts twice.
    T, omega = height, 2 * math.pi * params.delta
    log_T = math.log(T)
    g, g_prime = log_T / T ** 2, (1 - 2 * log_T) / T ** 3
    cosine_part = -g * math.sin(omega * T) / omega - g_prime * math.cos(omega * T) / omega ** 2
    return ((log_T + 1) / T - cosine_part) / (2 * (math.pi * params.delta) ** 2)


def _tail_bound(
    zeros: ZeroList, params: KernelParams, log_conductor: t.Optional[float], density: ZeroDensity
) -> float:
    T = zeros.height

    if density is ZeroDensity.Height:
        if log_conductor is None:
            raise ValueError("Height-dependent density needs a log conductor")
        if T <= 1:
            return math.inf
        constant = log_conductor - 2 * math.log(2 * math.pi)
        return 2 * (constant * kernel_tail(T, params) + 2 * _log_tail(T, params)) / (2 * math.pi)

    per_unit = 1.0 if log_conductor is None else log_conductor / (2 * math.pi)
    return 2 * per_unit * kernel_tail(T, params)


def direct_zero_sum(
    zeros: ZeroList,
    params: KernelParams,
    log_conductor: t.Optional[float] = None,
    density: ZeroDensity = ZeroDensity.Flat,
) -> t.Tuple[float, float]:
    """Sum f(gamma; delta) over the listed zeros and their conjugates.

    Returns ``(value, tail)``, where ``tail`` estimates the contribution of
    the zeros above the last ordinate under the chosen density. It is a
    heuristic, not a bound.
    """
    values = fejer_kernel(zeros.ordinates, params)
    value = zeros.central_multiplicity + 2 * math.fsum(values.tolist())
    return value, _tail_bound(zeros, params, log_conductor, ZeroDensity(density))


@dataclass(frozen=True)
class VerificationReport:
    curve: str
    delta: float
    zeros: int
    explicit: float
    direct: float
    tail_bound: float
    density: ZeroDensity
    breakdown: t.Optional[EFBreakdown] = None

    @property
    def difference(self) -> float:
        return self.explicit - self.direct

    @property
    def passed(self) -> bool:
        return abs(self.difference) <= self.tail_bound + AGREEMENT_SLACK

    def __str__(self):
        return "\n".join(
            (
                f"curve        {self.curve}",
                f"delta        {self.delta}",
                f"zeros        {self.zeros}",
                f"explicit     {self.explicit:.10f}",
                f"direct       {self.direct:.10f}",
                f"difference   {self.difference:.3e}",
                f"tail bound   {self.tail_bound:.3e} (heuristic, {self.density.value} density)",
                f"status       {'PASS' if self.passed else 'FAIL'}",
            )
        )


def compare_methods(
    curve: WeierstrassCurve,
    log_conductor: float,
    zeros: ZeroList,
    params: KernelParams,
    settings: t.Optional[Settings] = None,
    density: ZeroDensity = ZeroDensity.Flat,
) -> VerificationReport:
    """ Explicit-formula total against the direct sum over ``zeros`` """
    breakdown, _ = zero_sum_bound(curve, log_conductor, params, settings=settings)
    direct, tail = direct_zero_sum(zeros, params, log_conductor, density)

    report = VerificationReport(
        curve=curve.literal,
        delta=params.delta,
        zeros=len(zeros),
        explicit=breakdown.total,
        direct=direct,
        tail_bound=tail,
        density=ZeroDensity(density),
        breakdown=breakdown,
    )

    if report.passed:
        logger.info("Zero sums agree for %s at delta=%s: gap %.3e", curve, params.delta, report.difference)
    else:
        logger.warning(
            "Zero sums disagree for %s at delta=%s: gap %.3e beyond heuristic tail %.3e",
            curve,
            params.delta,
            report.difference,
            tail,
        )
    return report
