"""The series A(x) that governs |D_n(x)|/n, its inverse, and the residual check.

    A(x) = sum_{k>=0} (-1)^k (4k + 2) / ((2k + 1)^2 - x),   0 <= x < 1,

is increasing from A(0) = pi/2 to A(1) = +inf.  The k = 0 term 2/(1 - x)
carries the pole, so A is evaluated as 2/(1 - x) + h(x) with

    h(x) = sum_{k>=1} (-1)^k (4k + 2) / ((2k + 1)^2 - x),

a bounded function with h(0) = (pi - 4)/2 and h(1) = -1/2.  Grouping the
terms k = 2l + 1, 2l + 2 of h gives -sum_l P(l) with P(l) > 0 decreasing.
Writing a = sqrt(x),

    P(t) = sum_{s = +-a} 1/(4t + 3 + s) - 1/(4t + 5 + s),

so a few dozen pairs are summed directly and the tail is closed with the
Euler-Maclaurin formula applied to P, whose antiderivative and derivatives
are elementary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .barycentric import denominator
from .grid import NodeSingularity, cell_offsets

HALF_PI = math.pi / 2.0
H_AT_ZERO = (math.pi - 4.0) / 2.0
H_AT_ONE = -0.5


@dataclass(frozen=True)
class ASeriesConfig:
    tol: float = 1e-12
    max_pairs: int = 10 ** 6

    def __post_init__(self):
        if not self.tol >= 1e-15:
            raise ValueError("tol must be at least 1e-15")
        if self.max_pairs < 8:
            raise ValueError("max_pairs must be at least 8")

    def pairs(self) -> int:
        """Pairs summed explicitly before the Euler-Maclaurin tail.

        The first neglected correction is bounded by
        4 * 7! * 4^7 / ((4L + 2)^8 * 1209600); choose L so that it is below tol.
        """
        c = 4.0 * math.factorial(7) * 4.0 ** 7 / 1209600.0
        base = (c / self.tol) ** (1.0 / 8.0)
        L = max(8, math.ceil((base - 2.0) / 4.0))
        return min(L, self.max_pairs)


DEFAULT_CONFIG = ASeriesConfig()

# Bernoulli-number coefficients B_{2j}/(2j)! for j = 1, 2, 3
_EM_COEFFS = (1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0)


def _recip_derivative(t, c, order):
    """d^order/dt^order of 1/(4t + c)."""
    return (-1) ** order * math.factorial(order) * 4.0 ** order / (4.0 * t + c) ** (order + 1)


def _pair_tail(a, L):
    """sum_{l >= L} P(l) by Euler-Maclaurin."""
    offsets = [(3.0 + a, 5.0 + a), (3.0 - a, 5.0 - a)]
    integral = 0.0
    tail = 0.0
    for c_plus, c_minus in offsets:
        integral += 0.25 * np.log1p(2.0 / (4.0 * L + c_plus))
        tail += 0.5 * (1.0 / (4.0 * L + c_plus) - 1.0 / (4.0 * L + c_minus))
        for coeff, order in zip(_EM_COEFFS, (1, 3, 5)):
            d = _recip_derivative(L, c_plus, order) - _recip_derivative(L, c_minus, order)
            tail -= coeff * d
    return integral + tail


def h(x, config: ASeriesConfig = DEFAULT_CONFIG):
    """A(x) - 2/(1 - x) on [0, 1]."""
    xa = np.asarray(x, dtype=float)
    if np.any((xa < 0.0) | (xa > 1.0)) or np.any(np.isnan(xa)):
        raise ValueError("A is defined on [0, 1]")
    a = np.sqrt(xa)[..., None]
    L = config.pairs()
    ell = np.arange(L, dtype=float)
    pairs = (1.0 / (4.0 * ell + 3.0 + a) - 1.0 / (4.0 * ell + 5.0 + a)
             + 1.0 / (4.0 * ell + 3.0 - a) - 1.0 / (4.0 * ell + 5.0 - a))
    # smallest pairs first
    head = np.sum(pairs[..., ::-1], axis=-1)
    out = -(head + _pair_tail(a[..., 0], L))
    return float(out) if np.ndim(x) == 0 else out


def A(x, config: ASeriesConfig = DEFAULT_CONFIG, one_minus_x=None):
    """The series A on [0, 1] with A(1) = +inf.

    Near x = 1 the pole term 2/(1 - x) dominates; callers that know 1 - x
    more accurately than x itself can pass it as ``one_minus_x``.
    """
    xa = np.asarray(x, dtype=float)
    hv = np.asarray(h(xa, config))
    gap = 1.0 - xa if one_minus_x is None else np.asarray(one_minus_x, dtype=float)
    with np.errstate(divide="ignore"):
        out = np.where(gap == 0.0, math.inf, 2.0 / gap + hv)
    return float(out) if np.ndim(x) == 0 else out


def A_inverse(y: float, config: ASeriesConfig = DEFAULT_CONFIG, rel_tol: float = 1e-10) -> float:
    """Inverse of A on [pi/2, +inf], by bisection.

    The bracket comes from 2/(1 - x) - 1/2 <= A(x) <= 2/(1 - x) + (pi - 4)/2,
    and the search runs on u = 1 - x so large y keep their resolution.
    """
    y = float(y)
    # values a hair below pi/2 come from the truncation error of A itself
    if math.isnan(y) or y < HALF_PI - 4.0 * config.tol:
        raise ValueError(f"A takes values in [pi/2, +inf]; got {y}")
    if y == math.inf:
        return 1.0
    target = rel_tol * max(1.0, abs(y))
    if y <= A(0.0, config) or abs(A(0.0, config) - y) <= target:
        return 0.0
    # A(1 - u) is decreasing in u
    u_lo = 2.0 / (y + 0.5)
    u_hi = min(1.0, 2.0 / (y - H_AT_ZERO))
    for _ in range(200):
        u = 0.5 * (u_lo + u_hi)
        val = A(1.0 - u, config)
        if abs(val - y) <= 0.01 * target or u_hi - u_lo <= 4 * math.ulp(u):
            break
        if val > y:
            u_lo = u
        else:
            u_hi = u
    return 1.0 - u


def residual_bound(n: int, iota) -> np.ndarray | float:
    """1/(4(1 + iota)) + 1/(4(n - iota)).

    This is the classical estimate of the residual.  It is accurate away
    from the ends of the grid but can be exceeded by O(1/iota^2) when iota
    or n - iota is small; see ``tail_bound`` for a bound that always holds.
    """
    iota = np.asarray(iota, dtype=float)
    out = 0.25 / (1.0 + iota) + 0.25 / (n - iota)
    return float(out) if out.ndim == 0 else out


def tail_bound(n: int, iota, rho) -> np.ndarray | float:
    """1/(2 iota + 3 + rho) + 1/(2(n - iota) + 1 - rho).

    The residual is the sum of two alternating tails with decreasing terms,
    so each is bounded by its first term.  Unlike ``residual_bound`` this
    holds for every cell, including the first and last few.
    """
    iota = np.asarray(iota, dtype=float)
    rho = np.asarray(rho, dtype=float)
    out = 1.0 / (2.0 * iota + 3.0 + rho) + 1.0 / (2.0 * (n - iota) + 1.0 - rho)
    return float(out) if out.ndim == 0 else out


def residual(n: int, x, config: ASeriesConfig = DEFAULT_CONFIG):
    """| |D_n(x)|/n - A(rho_n(x)^2) | at points that are not nodes."""
    iota, left, right, node = cell_offsets(n, x)
    if np.any(node):
        raise NodeSingularity(n, np.asarray(x)[node][0] if np.ndim(x) else x)
    d = np.abs(np.asarray(denominator(n, x))) / n
    out = np.abs(d - np.asarray(A((left - 1.0) ** 2, config, left * right)))
    return float(out) if np.ndim(x) == 0 else out


def denominator_ratio(n: int, x, config: ASeriesConfig = DEFAULT_CONFIG):
    """|D_n(x)| / (n A(rho_n(x)^2)); tends to 1 along regular sequences."""
    iota, left, right, node = cell_offsets(n, x)
    if np.any(node):
        raise NodeSingularity(n, x)
    a = np.asarray(A((left - 1.0) ** 2, config, left * right))
    out = np.abs(np.asarray(denominator(n, x))) / (n * a)
    return float(out) if np.ndim(x) == 0 else out
