from __future__ import annotations

import enum
import typing as t
from dataclasses import dataclass

from sympy.ntheory.residue_ntheory import is_quad_residue

from .weierstrass import WeierstrassCurve, p_minimal_model

__all__ = (
    "ReductionType",
    "LocalData",
    "classify_reduction",
    "is_good_prime",
)


class ReductionType(str, enum.Enum):
    Good = "good"
    MultiplicativeSplit = "split"
    MultiplicativeNonsplit = "nonsplit"
    Additive = "additive"

    @property
    def is_bad(self) -> bool:
        return self is not ReductionType.Good


_TYPE_BY_TRACE = {
    1: ReductionType.MultiplicativeSplit,
    -1: ReductionType.MultiplicativeNonsplit,
    0: ReductionType.Additive,
}


@dataclass(frozen=True)
class LocalData:
    __slots__ = "p", "type", "ap"

    p: int
    type: ReductionType
    ap: int


def is_good_prime(curve: WeierstrassCurve, p: int) -> bool:
    if curve.disc % p:
        return True
    return p_minimal_model(curve, p).disc % p != 0


def classify_reduction(curve: WeierstrassCurve, p: int) -> LocalData:
    """Reduction type and trace of ``curve`` at ``p``.

    Badness is read off the p-minimal discriminant by a big-integer remainder,
    never by factoring. For bad p in {2, 3} the type follows from counting the
    nonsingular points of the reduction; for bad p >= 5 from c4 and the
    quadratic character of -c6.
    """
    model = curve if curve.disc % p else p_minimal_model(curve, p)

    if model.disc % p:
        from ..ap.counting import good_prime_trace

        return LocalData(p, ReductionType.Good, good_prime_trace(model, p))

    if p <= 3:
        ap = p - _count_affine_points(model.reduce(p), p)
    elif model.c4 % p == 0:
        ap = 0
    else:
        # c6 is a unit here since c4^3 = c6^2 mod p
        ap = 1 if is_quad_residue(-model.c6 % p, p) else -1

    return LocalData(p, _TYPE_BY_TRACE[ap], ap)


def _count_affine_points(ainvs: t.Tuple[int, ...], p: int) -> int:
    a1, a2, a3, a4, a6 = ainvs
    return sum(
        1
        for x in range(p)
        for y in range(p)
        if (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % p == 0
    )
