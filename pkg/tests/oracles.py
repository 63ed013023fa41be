"""Slow but independent reference implementations used by the tests."""

import math
from fractions import Fraction

import mpmath


def denominator_fraction(n, x):
    """D_n(x) in exact arithmetic."""
    x = Fraction(x)
    return sum((Fraction((-1) ** k) / (x - Fraction(2 * k - n, n)) for k in range(n + 1)), Fraction(0))


def interpolant_fsum(f, n, x, halved=False):
    """Barycentric interpolant with math.fsum sums."""
    terms_n, terms_d = [], []
    for k in range(n + 1):
        xk = 2.0 * k / n - 1.0
        w = (-1.0) ** k
        if halved and k in (0, n):
            w *= 0.5
        terms_d.append(w / (x - xk))
        terms_n.append(w * f(xk) / (x - xk))
    return math.fsum(terms_n) / math.fsum(terms_d)


def series_A(x, dps=30):
    """A(x) by mpmath's alternating series acceleration."""
    with mpmath.workdps(dps):
        x = mpmath.mpf(x)
        return mpmath.nsum(lambda k: (-1) ** int(k) * (4 * k + 2) / ((2 * k + 1) ** 2 - x), [0, mpmath.inf])


def delta_pairwise(f, n, x):
    """Delta_n(f, x) as (1/2) sum_{k<n} (-1)^k (g_k - g_{k+1}), g_k = (f_k - f(x))/(x - x_k).

    Regrouping the endpoint-halved sum this way shares no code path with
    the weighted sum used by the library.
    """
    fx = f(x)
    g = [(f(2.0 * k / n - 1.0) - fx) / (x - (2.0 * k / n - 1.0)) for k in range(n + 1)]
    return 0.5 * math.fsum((-1) ** k * (g[k] - g[k + 1]) for k in range(n))


def limit_pairs_brute_force(a, b, parity_odd):
    """(sign, rho^2) pairs visited along one parity of n, for x + 1 = a/b.

    rho_n and iota_n depend on n only through n mod 8b (up to the parity of
    iota), so one sweep over two periods visits every pair that occurs
    infinitely often.
    """
    out = set()
    start = 1 if parity_odd else 2
    for n in range(start, start + 16 * b, 2):
        num = n * a
        if num % (2 * b) == 0:
            continue
        iota = num // (2 * b)
        rho = Fraction(num - (2 * iota + 1) * b, b)
        out.add(((-1) ** iota, rho * rho))
    return out
