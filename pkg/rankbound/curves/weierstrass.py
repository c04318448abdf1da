from __future__ import annotations

import dataclasses
import math
import typing as t

from sympy import isprime, multiplicity

from ..base import CurveError, SingularModel

__all__ = (
    "WeierstrassCurve",
    "curve_from_ainvs",
    "p_minimal_model",
    "twist_scaled",
    "check_bad_primes",
    "valuation",
)

AInvariants = t.Tuple[int, int, int, int, int]


@dataclasses.dataclass(frozen=True)
class WeierstrassCurve:
    """Generalized Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.

    Coefficients are exact Python integers of any size. The b/c invariants and
    the discriminant are derived once at construction.
    """

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    b2: int = dataclasses.field(init=False, repr=False, compare=False)
    b4: int = dataclasses.field(init=False, repr=False, compare=False)
    b6: int = dataclasses.field(init=False, repr=False, compare=False)
    b8: int = dataclasses.field(init=False, repr=False, compare=False)
    c4: int = dataclasses.field(init=False, repr=False, compare=False)
    c6: int = dataclasses.field(init=False, repr=False, compare=False)
    disc: int = dataclasses.field(init=False, repr=False, compare=False)

    def __post_init__(self):
        a1, a2, a3, a4, a6 = map(int, self.ainvs)
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        derived = dict(
            b2=b2,
            b4=b4,
            b6=b6,
            b8=b8,
            c4=b2 * b2 - 24 * b4,
            c6=-b2 ** 3 + 36 * b2 * b4 - 216 * b6,
            disc=-b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6,
        )
        for name, value in derived.items():
            object.__setattr__(self, name, value)

    @property
    def ainvs(self) -> AInvariants:
        return self.a1, self.a2, self.a3, self.a4, self.a6

    @property
    def literal(self) -> str:
        return "[{}]".format(",".join(map(str, self.ainvs)))

    def reduce(self, p: int) -> AInvariants:
        a1, a2, a3, a4, a6 = self.ainvs
        return a1 % p, a2 % p, a3 % p, a4 % p, a6 % p

    def short_model(self, p: int) -> t.Tuple[int, int]:
        """ Coefficients (A, B) of y^2 = x^3 + A x + B over F_p, isomorphic for p >= 5 """
        return (-27 * self.c4) % p, (-54 * self.c6) % p

    def __str__(self):
        return self.literal


def curve_from_ainvs(a1: int, a2: int, a3: int, a4: int, a6: int) -> WeierstrassCurve:
    curve = WeierstrassCurve(int(a1), int(a2), int(a3), int(a4), int(a6))
    if curve.disc == 0:
        raise SingularModel(curve.literal)
    return curve


def valuation(n: int, p: int) -> float:
    if n == 0:
        return math.inf
    return multiplicity(p, abs(n))


def twist_scaled(curve: WeierstrassCurve, u: int) -> WeierstrassCurve:
    """ Model with invariants (u^4 c4, u^6 c6, u^12 disc) """
    if u == 0:
        raise ValueError("Scaling factor should be nonzero")
    a1, a2, a3, a4, a6 = curve.ainvs
    return WeierstrassCurve(u * a1, u ** 2 * a2, u ** 3 * a3, u ** 4 * a4, u ** 6 * a6)


def p_minimal_model(curve: WeierstrassCurve, p: int) -> WeierstrassCurve:
    """Return a model of ``curve`` whose discriminant valuation at ``p`` is minimal.

    The input comes back unchanged when it is already p-minimal. Otherwise the
    invariants are scaled down by p^4, p^6 as long as an integral model with the
    scaled invariants exists (always for p >= 5, by Kraus' conditions at 2 and 3),
    and a model is rebuilt from them.
    """
    c4, c6 = curve.c4, curve.c6
    k = 0

    while True:
        u = p ** (k + 1)
        if curve.disc % (u ** 12) or c4 % (u ** 4) or c6 % (u ** 6):
            break
        if not _kraus_local(c4 // u ** 4, c6 // u ** 6, p):
            break
        k += 1

    if k == 0:
        return curve

    u = p ** k
    return _model_from_c4c6(c4 // u ** 4, c6 // u ** 6)


def check_bad_primes(curve: WeierstrassCurve, primes: t.Iterable[int]) -> None:
    """ Verify that ``primes`` is exactly the support of the discriminant """
    remaining = abs(curve.disc)

    for p in primes:
        p = int(p)
        if not isprime(p):
            raise CurveError(f"{p} is not a prime")
        if remaining % p:
            raise CurveError(f"{p} does not divide the discriminant of {curve}")
        while remaining % p == 0:
            remaining //= p

    if remaining != 1:
        raise CurveError(f"Discriminant of {curve} has prime factors outside the given list")


def _kraus_local(c4: int, c6: int, p: int) -> bool:
    if p == 3:
        return valuation(c6, 3) != 2
    if p == 2:
        return c6 % 4 == 3 or (valuation(c4, 2) >= 4 and c6 % 32 in (0, 8))
    return True


def _model_from_c4c6(c4: int, c6: int) -> WeierstrassCurve:
    b2 = -c6 % 12
    if b2 > 6:
        b2 -= 12

    b4, r4 = divmod(b2 * b2 - c4, 24)
    b6, r6 = divmod(-b2 ** 3 + 36 * b2 * b4 - c6, 216)
    if r4 or r6:
        raise CurveError(f"No integral model with c4={c4}, c6={c6}")

    a1, a3 = b2 % 2, b6 % 2
    model = WeierstrassCurve(a1, (b2 - a1) // 4, a3, (b4 - a1 * a3) // 2, (b6 - a3) // 4)

    if (model.c4, model.c6) != (c4, c6):
        raise CurveError(f"No integral model with c4={c4}, c6={c6}")
    return model
