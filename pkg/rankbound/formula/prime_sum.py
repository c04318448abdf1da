from __future__ import annotations

import math
import typing as t

import numpy as np
from numba import njit

from ..base import IncompleteStream
from ..curves import LocalData, WeierstrassCurve, is_good_prime
from .kernel import KernelParams

if t.TYPE_CHECKING:
    from ..ap import ApStream
    from ..settings import Settings

__all__ = "CompensatedSum", "prime_power_traces", "power_trace_sequence", "prime_term"


@njit(cache=True, nogil=True)
def _neumaier(values, total, compensation):
    for x in values:
        s = total + x
        if abs(total) >= abs(x):
            compensation += (total - s) + x
        else:
            compensation += (x - s) + total
        total = s
    return total, compensation


class CompensatedSum:
    """Neumaier-compensated running sum.

    Terms are folded strictly in the order they arrive, so the result depends
    on the term sequence only, not on how it was cut into arrays.
    """

    __slots__ = "total", "compensation"

    def __init__(self):
        self.total = 0.0
        self.compensation = 0.0

    @property
    def value(self) -> float:
        return self.total + self.compensation

    def add(self, x: float):
        s = self.total + x
        if abs(self.total) >= abs(x):
            self.compensation += (self.total - s) + x
        else:
            self.compensation += (x - s) + self.total
        self.total = s

    def add_array(self, values: np.ndarray):
        if values.shape[0]:
            self.total, self.compensation = _neumaier(
                np.ascontiguousarray(values, dtype=np.float64), self.total, self.compensation
            )


def power_trace_sequence(ap: int, p: int, k_max: int, good: bool = True) -> t.List[int]:
    """ [A_1, ..., A_k_max] as exact integers """
    if not good:
        return [ap ** k for k in range(1, k_max + 1)]

    sequence, previous, current = [], 2, ap
    for _ in range(k_max):
        sequence.append(current)
        previous, current = current, ap * current - p * previous
    return sequence


def prime_power_traces(local: LocalData, k: int) -> int:
    """A_k = alpha^k + beta^k in the arithmetic normalization.

    >>> prime_power_traces(LocalData(7, ReductionType.Good, -2), 3)
    34
    """
    if k < 0:
        raise ValueError("Power should be a nonnegative integer")
    if k == 0:
        return 1 if local.type.is_bad else 2
    return power_trace_sequence(local.ap, local.p, k, good=not local.type.is_bad)[-1]


def _add_prime_powers(acc: CompensatedSum, curve: WeierstrassCurve, p: int, ap: int, log_x_max: float):
    log_p = math.log(p)
    k_max = int(log_x_max // log_p)
    if k_max < 2:
        return

    good = is_good_prime(curve, p)
    traces = power_trace_sequence(ap, p, k_max, good=good)
    for k in range(2, k_max + 1):
        acc.add(log_p * (traces[k - 1] / p ** k) * (1 - k * log_p / log_x_max))


def prime_term(
    curve: WeierstrassCurve,
    params: KernelParams,
    stream: t.Optional[ApStream] = None,
    settings: t.Optional[Settings] = None,
) -> float:
    """The subtracted prime-power sum of the explicit formula.

    (1 / pi delta) sum over p <= exp(2 pi delta) and k <= 2 pi delta / log p
    of log p * A_k / p^k * (1 - k log p / (2 pi delta)).

    The k = 1 terms are folded chunk-wise in numpy, the higher powers (only
    p <= exp(pi delta)) from exact integer traces, into two separate
    compensated sums.
    """
    limit = params.x_max
    if limit < 2:
        return 0.0

    if stream is None:
        from ..ap import ap_stream

        stream = ap_stream(curve, limit, settings)
    if stream.x_max < limit:
        raise IncompleteStream(f"Stream stops at {stream.x_max}, the prime sum needs {limit}")

    log_x_max = params.log_x_max
    square_limit = math.isqrt(limit)
    linear, powers = CompensatedSum(), CompensatedSum()
    covered = 1

    for chunk in stream.chunks():
        chunk = chunk.upto(limit)
        covered = max(covered, chunk.hi)
        if not len(chunk):
            continue

        primes = chunk.primes.astype(np.float64)
        log_p = np.log(primes)
        linear.add_array(log_p * (chunk.traces / primes) * (1.0 - log_p / log_x_max))

        small = chunk.primes <= square_limit
        for p, ap in zip(chunk.primes[small].tolist(), chunk.traces[small].tolist()):
            _add_prime_powers(powers, curve, p, ap, log_x_max)

    if covered < limit:
        raise IncompleteStream(f"Stream ended at {covered}, the prime sum needs {limit}")

    return (linear.value + powers.value) / (math.pi * params.delta)
