from __future__ import annotations

import dataclasses
import enum
import logging
import math
import time
import typing as t
import warnings

from ..base import BudgetExceeded, NegativeSumWarning
from ..curves import WeierstrassCurve
from ..settings import Settings
from .gamma import gamma_term
from .kernel import KernelParams
from .prime_sum import prime_term

if t.TYPE_CHECKING:
    from ..ap import ApStream

__all__ = (
    "Parity",
    "EFBreakdown",
    "RankBoundResult",
    "refine_parity",
    "round_up",
    "zero_sum_bound",
    "heuristic_baseline",
    "delta_schedule",
)

logger = logging.getLogger(__name__)


class Parity(str, enum.Enum):
    Even = "even"
    Odd = "odd"
    Unknown = "unknown"

    @classmethod
    def of_rank(cls, rank: t.Optional[int]) -> Parity:
        if rank is None:
            return cls.Unknown
        return cls.Odd if rank % 2 else cls.Even


@dataclasses.dataclass(frozen=True)
class EFBreakdown:
    """ Terms of the explicit formula for one (curve, delta) """

    conductor_term: float
    log2pi_term: float
    gamma_term: float
    prime_term: float
    gamma_quad_error: float = 0.0
    total: float = dataclasses.field(init=False)

    def __post_init__(self):
        total = self.conductor_term - self.log2pi_term + self.gamma_term - self.prime_term
        object.__setattr__(self, "total", total)

    def as_dict(self) -> t.Dict[str, float]:
        return dataclasses.asdict(self)


@dataclasses.dataclass(frozen=True)
class RankBoundResult:
    sum: float
    floor_bound: int
    parity: Parity
    refined_bound: int
    delta: float
    log_conductor: float
    curve: str = ""
    primes: int = 0
    seconds: float = 0.0


def refine_parity(floor_bound: int, parity: Parity) -> int:
    """ Largest integer <= floor_bound with the given parity """
    if parity is Parity.Unknown:
        return floor_bound
    wanted = 1 if parity is Parity.Odd else 0
    return floor_bound - (floor_bound - wanted) % 2


def round_up(value: float, places: int = 2) -> float:
    scale = 10 ** places
    # round() first, so that 21.7 * 100 = 2169.9999999999995 stays 2170
    return math.ceil(round(value * scale, 6)) / scale


def heuristic_baseline(log_conductor: float, params: KernelParams) -> float:
    """ Expected zero sum log N / (2 pi delta) for a curve with no excess low zeros """
    if log_conductor < 0:
        raise ValueError("Log conductor should be nonnegative")
    return log_conductor / params.log_x_max


def zero_sum_bound(
    curve: WeierstrassCurve,
    log_conductor: float,
    params: KernelParams,
    parity: Parity = Parity.Unknown,
    settings: t.Optional[Settings] = None,
    stream: t.Optional[ApStream] = None,
) -> t.Tuple[EFBreakdown, RankBoundResult]:
    """Evaluate the explicit formula for ``curve`` and turn it into a rank bound.

    Under GRH the total bounds the analytic rank from above, since the kernel
    is nonnegative and equals 1 at the central point.
    """
    if log_conductor <= 0:
        raise ValueError("Log conductor should be positive")
    settings = settings or Settings()
    parity = Parity(parity)
    delta = params.delta

    started = time.perf_counter()
    gamma, gamma_error = gamma_term(params, settings.quad_tolerance, settings.tail_height)

    if stream is None and params.x_max >= 2:
        from ..ap import ap_stream

        stream = ap_stream(curve, params.x_max, settings)
    primes = prime_term(curve, params, stream, settings)

    breakdown = EFBreakdown(
        conductor_term=log_conductor / (2 * math.pi * delta),
        log2pi_term=math.log(2 * math.pi) / (math.pi * delta),
        gamma_term=gamma,
        prime_term=primes,
        gamma_quad_error=gamma_error,
    )

    total = breakdown.total
    if total < 0:
        logger.warning("Negative zero sum %.6f for %s at delta=%s", total, curve, delta)
        warnings.warn(f"Negative zero sum {total:.6f} for {curve} at delta={delta}", NegativeSumWarning)

    floor_bound = math.floor(total + settings.eps_guard)
    result = RankBoundResult(
        sum=total,
        floor_bound=floor_bound,
        parity=parity,
        refined_bound=refine_parity(floor_bound, parity),
        delta=delta,
        log_conductor=log_conductor,
        curve=curve.literal,
        primes=stream.stats.primes if stream is not None else 0,
        seconds=time.perf_counter() - started,
    )

    logger.info(
        "Zero sum for %s at delta=%s: %.6f (bound %d, refined %d) in %.2fs",
        curve,
        delta,
        total,
        result.floor_bound,
        result.refined_bound,
        result.seconds,
    )
    return breakdown, result


def delta_schedule(
    curve: WeierstrassCurve,
    log_conductor: float,
    parity: Parity,
    known_lower_bound: int,
    grid: t.Sequence[float],
    budget: t.Optional[int] = None,
    settings: t.Optional[Settings] = None,
) -> RankBoundResult:
    """Tighten the bound by walking up an ascending delta grid.

    Stops at the first delta whose refined bound reaches ``known_lower_bound``.
    ``budget`` caps the prime-sum length exp(2 pi delta); a grid point past it
    raises ``BudgetExceeded`` carrying the best result so far.
    """
    if not grid:
        raise ValueError("Delta grid should not be empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("Delta grid should be strictly ascending")

    best: t.Optional[RankBoundResult] = None
    for delta in grid:
        params = KernelParams(delta)
        if budget is not None and params.x_max > budget:
            raise BudgetExceeded(f"Delta {delta} needs primes up to {params.x_max}, budget is {budget}", best)

        _, result = zero_sum_bound(curve, log_conductor, params, parity, settings)
        if best is None or result.refined_bound < best.refined_bound:
            best = result
        if result.refined_bound <= known_lower_bound:
            logger.info("Bound for %s is tight at delta=%s", curve, delta)
            break

    assert best is not None
    return best
