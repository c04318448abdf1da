import cmath
import math

import mpmath

from .curves import brute_trace, primes_upto

__all__ = "double_loop_prime_term", "float_trace_prime_term", "gamma_term_oracle", "digamma_oracle"


def double_loop_prime_term(ainvs, delta, bad_traces):
    """ The prime sum straight from its definition, with point counts for a_p """
    total = 0.0
    log_x_max = 2 * math.pi * delta
    for p in primes_upto(int(math.exp(log_x_max))):
        ap = bad_traces[p] if p in bad_traces else brute_trace(ainvs, p)
        for k in range(1, int(log_x_max / math.log(p)) + 1):
            if p in bad_traces:
                power = ap ** k
            else:
                power = _waring(ap, p, k)
            total += math.log(p) * power / p ** k * (1 - k * math.log(p) / log_x_max)
    return total / (math.pi * delta)


def _waring(s, q, k):
    # alpha^k + beta^k for the roots of X^2 - s X + q
    return sum((-1) ** j * (k * math.comb(k - j, j) // (k - j)) * s ** (k - 2 * j) * q ** j for j in range(k // 2 + 1))


def float_trace_prime_term(pairs, delta, bad_primes):
    """ The same sum through alpha, beta = roots of X^2 - a_p X + p, in floating point """
    total = 0.0
    log_x_max = 2 * math.pi * delta
    for p, ap in pairs:
        if p > math.exp(log_x_max):
            break
        if p in bad_primes:
            alpha, beta = ap / math.sqrt(p), 0.0
        else:
            root = cmath.sqrt(ap * ap - 4 * p)
            alpha, beta = (ap + root) / (2 * math.sqrt(p)), (ap - root) / (2 * math.sqrt(p))
        for k in range(1, int(log_x_max / math.log(p)) + 1):
            analytic = (alpha ** k + beta ** k).real
            total += math.log(p) * analytic / p ** (k / 2) * (1 - k * math.log(p) / log_x_max)
    return total / (math.pi * delta)


def gamma_term_oracle(delta, dps=30):
    """(1/pi) Re integral of psi(1+it) f(t; delta) dt by an independent route.

    With Re psi(1+it) = -euler + int_0^inf e^-u (1 - cos tu) / (1 - e^-u) du and
    the transform of f, the integral collapses to
    (1 / pi delta) (-euler + (1 / 2 pi delta) int_0^{2 pi delta} u / (e^u - 1) du - log(1 - e^{-2 pi delta})).
    """
    with mpmath.workdps(dps):
        width = 2 * mpmath.pi * delta
        ramp = mpmath.quad(lambda u: u / mpmath.expm1(u), [0, width]) / width
        flat = -mpmath.log(-mpmath.expm1(-width))
        return float((-mpmath.euler + ramp + flat) / (mpmath.pi * delta))


def digamma_oracle(t, dps=30):
    with mpmath.workdps(dps):
        return float(mpmath.re(mpmath.digamma(1 + 1j * mpmath.mpf(t))))
