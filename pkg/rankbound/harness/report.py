from __future__ import annotations

import dataclasses
import json
import logging
import os
import typing as t

from ..curves import WeierstrassCurve
from ..formula import EFBreakdown, KernelParams, Parity, RankBoundResult, heuristic_baseline, round_up, zero_sum_bound
from ..settings import Settings
from ..zeros import VerificationReport, ZeroList, compare_methods
from .fixtures import RECORD_CURVE_NAMES, record_curves

__all__ = (
    "SingleReport",
    "run_single",
    "report_table",
    "table_row",
    "run_table1",
)

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class SingleReport:
    breakdown: EFBreakdown
    result: RankBoundResult
    heuristic: float
    verification: t.Optional[VerificationReport] = None

    def as_dict(self) -> t.Dict[str, t.Any]:
        result = dataclasses.asdict(self.result)
        result["parity"] = self.result.parity.value

        verification = None
        if (v := self.verification) is not None:
            verification = {"zeros": v.zeros, "direct": v.direct, "tail_bound": v.tail_bound, "passed": v.passed}

        return {
            "breakdown": self.breakdown.as_dict(),
            "result": result,
            "heuristic": self.heuristic,
            "verification": verification,
        }

    def __str__(self):
        b, r = self.breakdown, self.result
        lines = [
            f"curve            {r.curve}",
            f"log conductor    {r.log_conductor:.6f}",
            f"delta            {r.delta}",
            f"conductor term   {b.conductor_term:+.10f}",
            f"log 2pi term     {-b.log2pi_term:+.10f}",
            f"gamma term       {b.gamma_term:+.10f}  (error {b.gamma_quad_error:.1e})",
            f"prime term       {-b.prime_term:+.10f}  ({r.primes} primes)",
            f"total            {b.total:.10f}  (rounded up {round_up(b.total):.2f})",
            f"heuristic        {self.heuristic:.2f}",
            f"floor bound      {r.floor_bound}",
            f"refined bound    {r.refined_bound}  (parity {r.parity.value})",
        ]
        if self.verification is not None:
            lines.extend(("", str(self.verification)))
        return "\n".join(lines)


def run_single(
    curve: WeierstrassCurve,
    log_conductor: float,
    delta: float,
    parity: Parity = Parity.Unknown,
    settings: t.Optional[Settings] = None,
    zeros: t.Optional[ZeroList] = None,
    json_path: t.Optional[t.Union[str, os.PathLike]] = None,
) -> SingleReport:
    params = KernelParams(delta)
    breakdown, result = zero_sum_bound(curve, log_conductor, params, parity, settings)

    verification = None
    if zeros is not None:
        verification = compare_methods(curve, log_conductor, zeros, params, settings)

    report = SingleReport(breakdown, result, heuristic_baseline(log_conductor, params), verification)
    if json_path is not None:
        with open(json_path, "w", encoding="utf-8") as file:
            json.dump(report.as_dict(), file, sort_keys=True, indent=2)
            file.write("\n")
    return report


def table_row(name: str, result: RankBoundResult) -> str:
    heuristic = heuristic_baseline(result.log_conductor, KernelParams(result.delta))
    return "  ".join(
        (
            f"{name:<4}",
            f"{result.log_conductor:.2f}",
            f"{result.delta:.1f}",
            f"{round_up(result.sum):.2f}",
            f"{heuristic:.2f}",
        )
    )


def report_table(results: t.Iterable[t.Tuple[str, RankBoundResult]]) -> str:
    """Rows of (curve, log N, delta, zero sum rounded up, log N / 2 pi delta).

    >>> print(report_table([("E22", result)]))
    curve  logN    delta  sum    heuristic
    E22   182.72  2.0  23.71  14.54
    """
    header = "curve  logN    delta  sum    heuristic"
    return "\n".join([header, *(table_row(name, result) for name, result in results)])


def run_table1(
    names: t.Sequence[str] = RECORD_CURVE_NAMES[:-1],
    settings: t.Optional[Settings] = None,
) -> t.List[t.Tuple[str, RankBoundResult]]:
    """ Bounds for the record curves at their tabulated delta; E28 is opt-in """
    fixtures = record_curves()
    results = []
    for name in names:
        fixture = fixtures[name]
        logger.info("Evaluating %s at delta=%s", name, fixture.delta)
        _, result = zero_sum_bound(fixture.curve, fixture.log_conductor, fixture.params, fixture.parity, settings)
        results.append((name, result))
    return results
