"""Compiled point-counting kernels.

Everything here works on int64 residues for a prime p < 2**63. Products are
taken directly while they fit in 63 bits and through an overflow-free
double-and-add otherwise. Curves are in short form y^2 = x^3 + A x + B, points
are ``(x, y, inf)`` triples with ``inf == 1`` for the point at infinity.
"""
import math

import numpy as np
from numba import njit

__all__ = (
    "STATUS_OK",
    "STATUS_AMBIGUOUS",
    "mulmod",
    "powmod",
    "isqrt",
    "hasse_bound",
    "count_affine_points",
    "naive_traces",
    "bsgs_trace",
    "bsgs_traces",
)

STATUS_OK = 0
STATUS_AMBIGUOUS = 1

_DIRECT_MUL_BOUND = 3037000499  # floor(sqrt(2**63 - 1))
_MAX_ATTEMPTS = 64

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


@njit(cache=True, nogil=True)
def addmod(a, b, p):
    if a >= p - b:
        return a - (p - b)
    return a + b


@njit(cache=True, nogil=True)
def submod(a, b, p):
    if a >= b:
        return a - b
    return a + (p - b)


@njit(cache=True, nogil=True)
def mulmod(a, b, p):
    if p < _DIRECT_MUL_BOUND:
        return (a * b) % p

    result = 0
    a %= p
    b %= p
    while b > 0:
        if b & 1:
            result = addmod(result, a, p)
        a = addmod(a, a, p)
        b >>= 1
    return result


@njit(cache=True, nogil=True)
def powmod(base, exponent, p):
    result = 1 % p
    base %= p
    while exponent > 0:
        if exponent & 1:
            result = mulmod(result, base, p)
        base = mulmod(base, base, p)
        exponent >>= 1
    return result


@njit(cache=True, nogil=True)
def invmod(a, p):
    r0, r1 = p, a % p
    s0, s1 = 0, 1
    while r1 != 0:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s0 < 0:
        s0 += p
    return s0


@njit(cache=True, nogil=True)
def isqrt(n):
    r = min(np.int64(math.sqrt(n)), _DIRECT_MUL_BOUND)
    while r * r > n:
        r -= 1
    while r < _DIRECT_MUL_BOUND and (r + 1) * (r + 1) <= n:
        r += 1
    return r


@njit(cache=True, nogil=True)
def hasse_bound(p):
    """ floor(2 sqrt(p)) without forming 4 p, which overflows int64 from p = 2**61 on """
    r = isqrt(p)
    if r * r + r < p:
        return 2 * r + 1
    return 2 * r


@njit(cache=True, nogil=True)
def _splitmix(state):
    state = state + _GOLDEN
    z = state
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return state, z ^ (z >> np.uint64(31))


@njit(cache=True, nogil=True)
def count_affine_points(a1, a2, a3, a4, a6, p):
    """ Affine solutions of the generalized Weierstrass equation over F_p, O(p) """
    count = 0
    if p == 2:
        for x in range(2):
            for y in range(2):
                lhs = y * y + a1 * x * y + a3 * y
                rhs = x * x * x + a2 * x * x + a4 * x + a6
                if (lhs - rhs) % 2 == 0:
                    count += 1
        return count

    squares = np.zeros(p, dtype=np.bool_)
    for y in range(p):
        squares[mulmod(y, y, p)] = True

    for x in range(p):
        # y^2 + (a1 x + a3) y - g(x) = 0 has 1 + chi(disc) roots
        lin = addmod(mulmod(a1, x, p), a3, p)
        g = addmod(mulmod(addmod(mulmod(addmod(x, a2, p), x, p), a4, p), x, p), a6, p)
        disc = addmod(mulmod(lin, lin, p), mulmod(4 % p, g, p), p)
        if disc == 0:
            count += 1
        elif squares[disc]:
            count += 2
    return count


@njit(cache=True, nogil=True)
def naive_traces(primes, a1s, a2s, a3s, a4s, a6s, out):
    for i in range(primes.shape[0]):
        p = primes[i]
        out[i] = p - count_affine_points(a1s[i], a2s[i], a3s[i], a4s[i], a6s[i], p)


@njit(cache=True, nogil=True)
def _ec_add(x1, y1, i1, x2, y2, i2, a, p):
    if i1:
        return x2, y2, i2
    if i2:
        return x1, y1, i1

    if x1 == x2:
        if addmod(y1, y2, p) == 0:
            return 0, 0, 1
        # doubling
        num = addmod(mulmod(3, mulmod(x1, x1, p), p), a, p)
        lam = mulmod(num, invmod(addmod(y1, y1, p), p), p)
    else:
        lam = mulmod(submod(y2, y1, p), invmod(submod(x2, x1, p), p), p)

    x3 = submod(submod(mulmod(lam, lam, p), x1, p), x2, p)
    y3 = submod(mulmod(lam, submod(x1, x3, p), p), y1, p)
    return x3, y3, 0


@njit(cache=True, nogil=True)
def _ec_neg(x, y, i, p):
    if i:
        return x, y, i
    return x, (p - y) % p, 0


@njit(cache=True, nogil=True)
def _ec_mul(k, x, y, i, a, p):
    if k < 0:
        x, y, i = _ec_neg(x, y, i, p)
        k = -k

    rx, ry, ri = 0, 0, 1
    while k > 0:
        if k & 1:
            rx, ry, ri = _ec_add(rx, ry, ri, x, y, i, a, p)
        x, y, i = _ec_add(x, y, i, x, y, i, a, p)
        k >>= 1
    return rx, ry, ri


@njit(cache=True, nogil=True)
def _point_solutions(x, y, a, p, hasse, out):
    """Fill ``out`` with every t in [-hasse, hasse] such that (p + 1 - t) P = O.

    Returns the number of solutions written, or ``-d`` when the baby steps hit
    the point at infinity, i.e. P has the small order d.
    """
    m = isqrt(2 * hasse) + 1

    xs = np.empty(m, dtype=np.int64)
    ys = np.empty(m, dtype=np.int64)
    bx, by, bi = x, y, 0
    for j in range(m):
        if bi:
            return -(j + 1)
        xs[j], ys[j] = bx, by
        bx, by, bi = _ec_add(bx, by, bi, x, y, 0, a, p)

    order = np.argsort(xs)
    sorted_xs = xs[order]

    gx, gy, gi = _ec_mul(2 * m, x, y, 0, a, p)
    ngx, ngy, ngi = _ec_neg(gx, gy, gi, p)

    i_lo = -(hasse // (2 * m) + 1)
    i_hi = hasse // (2 * m) + 1

    qx, qy, qi = _ec_mul(p + 1, x, y, 0, a, p)
    sx, sy, si = _ec_mul(-i_lo, gx, gy, gi, a, p)
    rx, ry, ri = _ec_add(qx, qy, qi, sx, sy, si, a, p)

    found = 0
    for i in range(i_lo, i_hi + 1):
        base = 2 * m * i
        if ri:
            if -hasse <= base <= hasse and found < out.shape[0]:
                out[found] = base
                found += 1
        else:
            k = np.searchsorted(sorted_xs, rx)
            while k < m and sorted_xs[k] == rx:
                j = order[k] + 1
                t = base + j if ys[order[k]] == ry else base - j
                if -hasse <= t <= hasse and found < out.shape[0]:
                    out[found] = t
                    found += 1
                k += 1
        rx, ry, ri = _ec_add(rx, ry, ri, ngx, ngy, ngi, a, p)

    return found


@njit(cache=True, nogil=True)
def _count_consistent(rs, ds, n, hasse):
    """ Number of a in [-hasse, hasse] with a = rs[k] (mod ds[k]) for all k < n, and the last one """
    widest = 0
    for k in range(1, n):
        if ds[k] > ds[widest]:
            widest = k

    d, r = ds[widest], rs[widest]
    first = -hasse + ((r + hasse) % d)

    count, last = 0, 0
    a = first
    while a <= hasse:
        ok = True
        for k in range(n):
            if (a - rs[k]) % ds[k] != 0:
                ok = False
                break
        if ok:
            count += 1
            last = a
        a += d
    return count, last


@njit(cache=True, nogil=True)
def bsgs_trace(a, b, p, seed):
    """Trace of Frobenius of y^2 = x^3 + a x + b over F_p by baby-step giant-step.

    Each attempt draws x, sets f = x^3 + a x + b and works with the point
    (x f, f^2) on y^2 = x^3 + a f^2 x + b f^3, which is the curve itself when f
    is a square and its quadratic twist otherwise. The set of traces compatible
    with that point's order is intersected over attempts until a single value
    of a_p is left in the Hasse interval. Returns ``(ap, status)``.
    """
    hasse = hasse_bound(p)
    solutions = np.empty(4 * isqrt(2 * hasse) + 16, dtype=np.int64)
    rs = np.empty(_MAX_ATTEMPTS, dtype=np.int64)
    ds = np.empty(_MAX_ATTEMPTS, dtype=np.int64)
    n = 0

    state = np.uint64(seed)
    for _ in range(_MAX_ATTEMPTS):
        state, z = _splitmix(state)
        x = np.int64(z % np.uint64(p))

        f = addmod(mulmod(addmod(mulmod(x, x, p), a, p), x, p), b, p)
        if f == 0:
            continue
        chi = 1 if powmod(f, (p - 1) // 2, p) == 1 else -1

        f2 = mulmod(f, f, p)
        px, py = mulmod(x, f, p), f2
        af = mulmod(a, f2, p)

        found = _point_solutions(px, py, af, p, hasse, solutions)
        if found < 0:
            d = -found
            r = ((p + 1) % d) * chi
        elif found == 0:
            continue
        elif found == 1:
            return chi * solutions[0], STATUS_OK
        else:
            ordered = np.sort(solutions[:found])
            d = 0
            for k in range(1, found):
                gap = ordered[k] - ordered[k - 1]
                if gap > 0 and (d == 0 or gap < d):
                    d = gap
            if d == 0:
                return chi * ordered[0], STATUS_OK
            r = (ordered[0] % d) * chi

        rs[n] = r % d
        ds[n] = d
        n += 1

        count, last = _count_consistent(rs, ds, n, hasse)
        if count == 1:
            return last, STATUS_OK
        if count == 0:
            return 0, STATUS_AMBIGUOUS

    return 0, STATUS_AMBIGUOUS


@njit(cache=True, nogil=True)
def bsgs_traces(primes, a_coeffs, b_coeffs, seeds, out, status):
    for i in range(primes.shape[0]):
        out[i], status[i] = bsgs_trace(a_coeffs[i], b_coeffs[i], primes[i], seeds[i])
