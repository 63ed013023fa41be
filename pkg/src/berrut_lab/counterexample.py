"""A Lipschitz function whose Berrut interpolants converge no faster than log(n)/n.

The building block is the sawtooth f_m, defined for m with sqrt(m) a multiple
of 4.  It vanishes outside [1/m, (sqrt(m) - 3)/m], rises with slope +1 from
1/m to 2/m, then alternates falls of slope -1 on [(4p+2)/m, (4p+4)/m) and
rises of slope +1 on [4p/m, (4p+2)/m), and finishes with a rise on
[(sqrt(m) - 4)/m, (sqrt(m) - 3)/m).  Summing f_{n_i} over n_i = 2^(2^i) gives
the full counterexample, which cannot be evaluated at the relevant scale;
this module checks every finite ingredient at moderate m instead.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .barycentric import BERRUT
from .grid import nodes


@dataclass(frozen=True)
class SawtoothParams:
    """m = (4r)^2.  We require r >= 2: for m = 16 the support is empty."""

    m: int

    def __post_init__(self):
        m = int(self.m)
        root = math.isqrt(m) if m > 0 else 0
        if m <= 0 or root * root != m or root % 4 != 0 or root < 8:
            raise ValueError(f"m must be (4r)^2 with r >= 2, got {self.m}")

    @property
    def root(self) -> int:
        return math.isqrt(self.m)

    @property
    def hats(self) -> int:
        """h = (sqrt(m) - 8)/4, the index of the last full hat."""
        return (self.root - 8) // 4


class PiecewiseLinear:
    """Continuous piecewise linear function, zero outside [b_0, b_s).

    Segment i covers [b_i, b_{i+1}) and has value v_i + s_i (x - b_i).
    Breakpoints are rationals; ``exact`` evaluates in rational arithmetic and
    ``__call__`` evaluates floats through a sorted search.
    """

    def __init__(self, breakpoints: Sequence[Fraction], left_values: Sequence[Fraction],
                 slopes: Sequence[Fraction]):
        self.breakpoints = [Fraction(b) for b in breakpoints]
        self.left_values = [Fraction(v) for v in left_values]
        self.slopes = [Fraction(s) for s in slopes]
        nseg = len(self.slopes)
        if len(self.breakpoints) != nseg + 1 or len(self.left_values) != nseg:
            raise ValueError("need one more breakpoint than segments")
        if any(b <= a for a, b in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        ends = [v + s * (b1 - b0) for v, s, b0, b1 in
                zip(self.left_values, self.slopes, self.breakpoints, self.breakpoints[1:])]
        if self.left_values[0] != 0 or ends[-1] != 0:
            raise ValueError("the function must vanish at both ends of its support")
        if any(e != v for e, v in zip(ends, self.left_values[1:])):
            raise ValueError("segments do not join continuously")
        self._bp = np.array([float(b) for b in self.breakpoints])
        self._v = np.array([float(v) for v in self.left_values])
        self._s = np.array([float(s) for s in self.slopes])

    @property
    def support(self) -> tuple[Fraction, Fraction]:
        return self.breakpoints[0], self.breakpoints[-1]

    def lipschitz_constant(self) -> Fraction:
        return max(abs(s) for s in self.slopes)

    def exact(self, x) -> Fraction:
        x = Fraction(x)
        i = bisect.bisect_right(self.breakpoints, x) - 1
        if i < 0 or i >= len(self.slopes):
            return Fraction(0)
        return self.left_values[i] + self.slopes[i] * (x - self.breakpoints[i])

    def __call__(self, x):
        xa = np.asarray(x, dtype=float)
        i = np.searchsorted(self._bp, xa, side="right") - 1
        inside = (i >= 0) & (i < self._s.size)
        j = np.clip(i, 0, self._s.size - 1)
        out = np.where(inside, self._v[j] + self._s[j] * (xa - self._bp[j]), 0.0)
        return float(out) if out.ndim == 0 else out


def sawtooth(params: SawtoothParams) -> PiecewiseLinear:
    """f_m as a PiecewiseLinear, built from its raise and fall pieces."""
    m, root, h = params.m, params.root, params.hats
    pieces = [(Fraction(1, m), Fraction(2, m), Fraction(1))]
    for p in range(h + 1):
        pieces.append((Fraction(4 * p + 2, m), Fraction(4 * p + 4, m), Fraction(-1)))
    for p in range(1, h + 1):
        pieces.append((Fraction(4 * p, m), Fraction(4 * p + 2, m), Fraction(1)))
    pieces.append((Fraction(root - 4, m), Fraction(root - 3, m), Fraction(1)))
    pieces.sort()
    bps = [a for a, _, _ in pieces] + [pieces[-1][1]]
    values, value = [], Fraction(0)
    for a, b, s in pieces:
        values.append(value)
        value += s * (b - a)
    return PiecewiseLinear(bps, values, [s for _, _, s in pieces])


_SAWTOOTH_CACHE: dict = {}


def _cached_sawtooth(params: SawtoothParams) -> PiecewiseLinear:
    if params.m not in _SAWTOOTH_CACHE:
        _SAWTOOTH_CACHE[params.m] = sawtooth(params)
    return _SAWTOOTH_CACHE[params.m]


def f_m(params: SawtoothParams, x):
    """Evaluate f_m; Fractions are evaluated exactly, anything else as float."""
    g = _cached_sawtooth(params)
    if isinstance(x, (Fraction, int)):
        if not -1 <= x <= 1:
            raise ValueError("x must lie in [-1, 1]")
        return g.exact(x)
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) > 1.0):
        raise ValueError("x must lie in [-1, 1]")
    return g(xa)


def node_value_law(params: SawtoothParams, k: int) -> Fraction:
    """f_m(2k/m - 1) predicted without the piecewise definition.

    (-1)^(k+1)/m for m/2 < k <= m/2 + (sqrt(m) - 4)/2, else 0.
    """
    m = params.m
    if not 0 <= k <= m:
        raise ValueError("k must lie in [0, m]")
    if m // 2 < k <= m // 2 + (params.root - 4) // 2:
        return Fraction((-1) ** (k + 1), m)
    return Fraction(0)


def shifted_harmonic_bound(a: float, l: int) -> tuple[float, float]:
    """(sum_{j<l} 1/(a + j), log(a + l) - log(a) + 1/(2a) - 1/(2(a + l)))."""
    if not a > 0:
        raise ValueError("a must be positive")
    if int(l) != l or l < 1:
        raise ValueError("l must be a positive integer")
    l = int(l)
    total = math.fsum(1.0 / (a + j) for j in range(l))
    lower = math.log1p(l / a) + 1.0 / (2.0 * a) - 1.0 / (2.0 * (a + l))
    return total, lower


def _check_qm(q: int, m: int) -> SawtoothParams:
    if q < 16:
        raise ValueError("q must be at least 16")
    return SawtoothParams(m)


def _header_term(g: PiecewiseLinear, q: int, m: int, k: int) -> Fraction:
    """(-1)^(k+1) f_m(2k/(4qm)) / (2k - 1)."""
    term = g.exact(Fraction(2 * k, 4 * q * m)) / (2 * k - 1)
    return -term if k % 2 == 0 else term


def _header_sum(g, q, m, lo, hi) -> Fraction:
    return sum((_header_term(g, q, m, k) for k in range(lo, hi)), Fraction(0))


def _inv_sum(lo: int, hi: int) -> Fraction:
    return sum((Fraction(1, 16 * l * l - 1) for l in range(lo, hi)), Fraction(0))


@dataclass(frozen=True)
class HatSums:
    """Direct and closed-form values of the raise sum R_p and fall sum F_p.

    R_p only exists for p >= 1; at p = 0 the R fields are None.
    """

    p: int
    R_p: Optional[float]
    F_p: float
    closed_R_p: Optional[float]
    closed_F_p: float

    @property
    def H_p(self) -> Optional[float]:
        return None if self.R_p is None else self.R_p + self.F_p


def hat_sums_exact(q: int, m: int, p: int) -> tuple:
    """(R_p, F_p, closed R_p, closed F_p) as Fractions; R entries None at p = 0."""
    params = _check_qm(q, m)
    if not 0 <= p <= params.hats:
        raise ValueError(f"p must lie in [0, {params.hats}] for m = {m}")
    g = _cached_sawtooth(params)
    F = _header_sum(g, q, m, 8 * p * q + 4 * q, 8 * (p + 1) * q)
    cF = -Fraction(16 * p * q + 12 * q - 1, 2 * q * m) * _inv_sum(4 * p * q + 2 * q, 4 * (p + 1) * q)
    if p == 0:
        return None, F, None, cF
    R = _header_sum(g, q, m, 8 * p * q, 8 * p * q + 4 * q)
    cR = Fraction(16 * p * q + 4 * q - 1, 2 * q * m) * _inv_sum(4 * p * q, 4 * p * q + 2 * q)
    return R, F, cR, cF


def hat_sums(q: int, m: int, p: int) -> HatSums:
    R, F, cR, cF = hat_sums_exact(q, m, p)
    fl = lambda v: None if v is None else float(v)
    return HatSums(p, fl(R), float(F), fl(cR), float(cF))


@dataclass(frozen=True)
class HeaderDecomposition:
    """Pieces of N_n(f_m, 1/n) / n for n = 4qm.

    ``numerator`` is the direct barycentric sum, ``assembled`` is
    n (R_- + F_0 + sum H_p + R_+) computed from the pieces.
    """

    q: int
    m: int
    numerator: float
    assembled: float
    R_minus: float
    F_0: float
    H: tuple = field(default_factory=tuple)
    R_plus: float = 0.0
    interpolant: float = 0.0


def header_decomposition(q: int, m: int) -> HeaderDecomposition:
    params = _check_qm(q, m)
    g = _cached_sawtooth(params)
    root, h, n = params.root, params.hats, 4 * q * m
    r_minus = _header_sum(g, q, m, 2 * q, 4 * q)
    r_plus = _header_sum(g, q, m, 2 * q * (root - 4), 2 * q * (root - 3))
    f0 = hat_sums_exact(q, m, 0)[1]
    hats = []
    for p in range(1, h + 1):
        R, F, _, _ = hat_sums_exact(q, m, p)
        hats.append(R + F)
    assembled = n * (r_minus + f0 + sum(hats, Fraction(0)) + r_plus)
    xs = np.array([1.0 / n])
    grid_nodes = nodes(n)
    num, den = _kernels.numerator_denominator(xs, grid_nodes, BERRUT.weights(n), g(grid_nodes))
    return HeaderDecomposition(q, m, float(num[0]), float(assembled), float(r_minus), float(f0),
                               tuple(float(v) for v in hats), float(r_plus),
                               float(num[0] / den[0]))


def uk_positivity(q: int, p: int, xi: float) -> tuple[float, float]:
    """u_k from its defining product and from the expanded polynomial, k = 4pq + xi q."""
    if q < 16 or p < 1 or not 0.0 <= xi < 2.0:
        raise ValueError("need q >= 16, p >= 1 and 0 <= xi < 2")
    k = 4 * p * q + xi * q
    direct = ((16 * p * q + 4 * q - 1) * (16 * (k + 2 * q) ** 2 - 1)
              - (16 * p * q + 12 * q - 1) * (16 * k * k - 1))
    expanded = 8 * q * (256 * p * p * q * q + 256 * p * q * q - 32 * p * q - 16 * q * q * xi * xi
                        + 32 * q * q + 32 * q * q * xi - 8 * q * xi - 8 * q + 1)
    return float(direct), float(expanded)


def delta_m(m: int) -> float:
    r = math.sqrt(m)
    return 1.0 + math.log1p(-3.0 / r) - 1.0 / (r - 3.0)


@dataclass(frozen=True)
class MainTerm:
    """N_m(f_m, 1/m) by direct summation next to its closed forms.

    ``harmonic`` is sum_{i=1}^{(sqrt(m)-4)/2} 1/(2i - 1), which N equals
    exactly; ``formula`` is log(m)/4 + delta_m/2, which bounds it from below.
    """

    m: int
    direct: float
    formula: float
    harmonic: float
    delta: float

    @property
    def identity_residual(self) -> float:
        return abs(self.direct - self.formula)


def main_term_identity(params: SawtoothParams) -> MainTerm:
    m = params.m
    g = _cached_sawtooth(params)
    grid_nodes = nodes(m)
    num = _kernels.cauchy_sums(np.array([1.0 / m]), np.zeros(1), grid_nodes,
                               BERRUT.weights(m), g(grid_nodes))
    harmonic = math.fsum(1.0 / (2 * i - 1) for i in range(1, (params.root - 4) // 2 + 1))
    d = delta_m(m)
    return MainTerm(m, float(num[0]), math.log(m) / 4.0 + d / 2.0, harmonic, d)


MAX_TOWER_INDEX = 5


def tower(j: int) -> int:
    """n_j = 2^(2^j)."""
    return 2 ** (2 ** j)


def support_disjointness(j_max: int) -> bool:
    """(sqrt(n_{j+1}) - 3)/n_{j+1} < 1/n_j for 1 <= j < j_max, in integers."""
    if j_max > MAX_TOWER_INDEX:
        raise OverflowError(f"n_j = 2^(2^j) leaves 64-bit integers beyond j = {MAX_TOWER_INDEX}")
    if j_max < 2:
        raise ValueError("j_max must be at least 2")
    for j in range(1, j_max):
        n, n_next = tower(j), tower(j + 1)
        if not (math.isqrt(n_next) - 3) * n < n_next:
            return False
    return True


def vanishing_claims(j_max: int = MAX_TOWER_INDEX) -> list[tuple[int, int, str, bool]]:
    """Check f_{n_i}(1/n_j) = 0 for i != j and f_{n_i}(x_{k,n_j}) = 0 for i > j.

    Only towers with sqrt(n_i) >= 8 carry a sawtooth, so i, j run over 3..j_max.
    """
    if j_max > MAX_TOWER_INDEX:
        raise OverflowError(f"n_j = 2^(2^j) leaves 64-bit integers beyond j = {MAX_TOWER_INDEX}")
    out = []
    idx = range(3, j_max + 1)
    for j in idx:
        nj = tower(j)
        for i in idx:
            if i == j:
                continue
            params = SawtoothParams(tower(i))
            out.append((i, j, "t", f_m(params, Fraction(1, nj)) == 0))
            if i > j:
                vals = f_m(params, nodes(nj))
                out.append((i, j, "nodes", bool(np.all(vals == 0.0))))
    return out
