from __future__ import annotations

import enum
import hashlib
import typing as t
from dataclasses import dataclass

import numpy as np

from ..base import BadPrimeRouted, InternalAmbiguity
from ..curves import WeierstrassCurve, p_minimal_model
from ..settings import MIN_BSGS_PRIME
from . import kernels

__all__ = (
    "ApSource",
    "ApRecord",
    "ap_naive",
    "ap_bsgs",
    "good_prime_trace",
    "curve_hash",
    "prime_seed",
    "NAIVE_LIMIT",
)

NAIVE_LIMIT = 10 ** 7
_U64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


class ApSource(str, enum.Enum):
    Naive = "naive"
    BSGS = "bsgs"
    BadPrime = "bad"
    Cached = "cached"


@dataclass(frozen=True)
class ApRecord:
    __slots__ = "p", "ap", "source"

    p: int
    ap: int
    source: ApSource


def curve_hash(curve: WeierstrassCurve) -> int:
    """Unsigned 64-bit fingerprint of the model's a-invariants.

    The md5 digest of the canonical literal is folded in halves down to 64 bits
    rather than truncated, so every digest bit contributes.
    """
    digest = hashlib.md5(curve.literal.encode(), usedforsecurity=False).digest()
    value = int.from_bytes(digest, "little")

    bit_len = value.bit_length()
    while bit_len > 64:
        bit_len = (bit_len + 1) >> 1
        lo_mask = (1 << bit_len) - 1
        value = (value & lo_mask) ^ (value >> bit_len)

    return value & _U64


def prime_seed(hash_: int, p: int) -> int:
    return (hash_ ^ (p * _GOLDEN)) & _U64


def _p_integral_model(curve: WeierstrassCurve, p: int) -> WeierstrassCurve:
    model = curve if curve.disc % p else p_minimal_model(curve, p)
    if model.disc % p == 0:
        raise BadPrimeRouted(f"{p} is a prime of bad reduction for {curve}")
    return model


def ap_naive(curve: WeierstrassCurve, p: int) -> ApRecord:
    """ a_p = p + 1 - #E(F_p) by enumerating every affine point """
    if p > NAIVE_LIMIT:
        raise ValueError(f"Naive counting is limited to p <= {NAIVE_LIMIT}, got {p}")

    model = _p_integral_model(curve, p)
    count = kernels.count_affine_points(*(np.int64(c) for c in model.reduce(p)), np.int64(p))
    return ApRecord(p, int(p - count), ApSource.Naive)


def ap_bsgs(curve: WeierstrassCurve, p: int, seed: t.Optional[int] = None) -> ApRecord:
    """a_p from the group orders of the curve and its quadratic twist over F_p.

    Points are drawn from a generator seeded by (curve hash, p), so reruns are
    bit-identical.
    """
    if p < MIN_BSGS_PRIME:
        raise ValueError(f"Group-order counting needs p >= {MIN_BSGS_PRIME}, got {p}")
    if p >= 1 << 63:
        raise ValueError("Primes beyond 2**63 are not supported")

    model = _p_integral_model(curve, p)
    if seed is None:
        seed = prime_seed(curve_hash(curve), p)

    a, b = model.short_model(p)
    ap, status = kernels.bsgs_trace(np.int64(a), np.int64(b), np.int64(p), np.uint64(seed))
    if status != kernels.STATUS_OK:
        raise InternalAmbiguity(f"Could not isolate a_{p} for {curve}")

    return ApRecord(p, int(ap), ApSource.BSGS)


def good_prime_trace(model: WeierstrassCurve, p: int, naive_threshold: int = 2000) -> int:
    if p <= max(naive_threshold, MIN_BSGS_PRIME - 1):
        return ap_naive(model, p).ap
    return ap_bsgs(model, p).ap
