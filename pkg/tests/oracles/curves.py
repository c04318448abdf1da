""" Brute-force references, written for clarity over speed """

__all__ = (
    "SAMPLE_CURVES",
    "affine_points",
    "brute_trace",
    "nonsingular_trace",
    "primes_upto",
)

SAMPLE_CURVES = {
    "11a1": (0, -1, 1, -10, -20),
    "14a1": (1, 0, 1, 4, -6),
    "37a1": (0, 0, 1, -1, 0),
    "389a1": (0, 1, 1, -2, 0),
    "5077a1": (0, 0, 1, -7, 6),
}


def primes_upto(n):
    return [p for p in range(2, n + 1) if all(p % d for d in range(2, int(p ** 0.5) + 1))]


def _equation(ainvs, x, y):
    a1, a2, a3, a4, a6 = ainvs
    return y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6


def affine_points(ainvs, p):
    return [(x, y) for x in range(p) for y in range(p) if _equation(ainvs, x, y) % p == 0]


def brute_trace(ainvs, p):
    """ p + 1 - #E(F_p), counting the point at infinity """
    return p + 1 - (len(affine_points(ainvs, p)) + 1)


def nonsingular_trace(ainvs, p):
    """ p - #E_ns(F_p) on a model with bad reduction at p """
    a1, a2, a3, a4, a6 = ainvs

    def singular(x, y):
        dy = 2 * y + a1 * x + a3
        dx = a1 * y - 3 * x * x - 2 * a2 * x - a4
        return dx % p == 0 and dy % p == 0

    nonsingular = sum(1 for x, y in affine_points(ainvs, p) if not singular(x, y))
    return p - (nonsingular + 1)
