"""Bias functions and the sets of limit points of n (B_n f(x) - f(x)).

Away from the nodes the scaled error splits as

    n (B_n f(x) - f(x)) = (n / D_n(x)) (Delta_n(f, x) + bias),

where the bias is the odd bias O(f, x) for odd n and the even bias E(f, x)
for even n, and Delta_n tends to zero uniformly for functions with an
absolutely continuous derivative.  The possible limits are therefore the
bias divided by the possible limits of D_n(x)/n.  For rational x these form
a finite set depending on the parities of x + 1 = a/b; for irrational x every
value of magnitude at least pi/2 is a limit, and the error limits fill the
interval [-2|bias|/pi, 2|bias|/pi].
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from ._parallel import parallel_map
from .asymptotics import A
from .barycentric import BERRUT, interpolate
from .grid import Parity, ParityClass, RationalPoint, is_node

DEDUP_TOL = 1e-12


def odd_bias(f, x):
    """(f(x) - f(1)) / (2(x - 1)) - (f(x) - f(-1)) / (2(x + 1))."""
    x = np.asarray(x, dtype=float)
    fx = np.asarray(f(x), dtype=float)
    f1, fm1 = float(np.asarray(f(np.array(1.0)))), float(np.asarray(f(np.array(-1.0))))
    return (fx - f1) / (2.0 * (x - 1.0)) - (fx - fm1) / (2.0 * (x + 1.0))


def even_bias(f, x):
    """(f(1) - f(x)) / (2(x - 1)) + (f(-1) - f(x)) / (2(x + 1))."""
    x = np.asarray(x, dtype=float)
    fx = np.asarray(f(x), dtype=float)
    f1, fm1 = float(np.asarray(f(np.array(1.0)))), float(np.asarray(f(np.array(-1.0))))
    return (f1 - fx) / (2.0 * (x - 1.0)) + (fm1 - fx) / (2.0 * (x + 1.0))


def parity_bias(f, x, parity: Parity):
    return odd_bias(f, x) if parity is Parity.ODD else even_bias(f, x)


@dataclass(frozen=True)
class BiasPair:
    odd_bias: float
    even_bias: float

    def for_parity(self, parity: Parity) -> float:
        return self.odd_bias if parity is Parity.ODD else self.even_bias


def _check_interior(x):
    if not -1.0 < float(x) < 1.0:
        raise ValueError("the biases are only evaluated strictly inside (-1, 1)")


def bias(model, x: float) -> BiasPair:
    _check_interior(x)
    f = model.f if hasattr(model, "f") else model
    return BiasPair(float(odd_bias(f, float(x))), float(even_bias(f, float(x))))


class LimitKind(enum.Enum):
    FINITE = "finite"
    INTERVAL = "interval"


@dataclass(frozen=True)
class LimitSet:
    """Either a finite sorted set of values or a closed interval.

    For finite denominator sets ``rho_squared`` holds, for each value, the
    limit of rho_n(x)^2 that produces it and ``signs`` the limit of
    (-1)^iota_n(x).
    """

    parity: Parity
    kind: LimitKind
    values: tuple = ()
    lo: float = math.nan
    hi: float = math.nan
    rho_squared: tuple = ()
    signs: tuple = ()

    def __contains__(self, y) -> bool:
        return self.distance(y) == 0.0

    def distance(self, y: float) -> float:
        if self.kind is LimitKind.INTERVAL:
            return max(0.0, self.lo - y, y - self.hi)
        if not self.values:
            return math.inf
        return min(abs(y - v) for v in self.values)

    def __len__(self) -> int:
        return len(self.values)

    def describe(self) -> str:
        if self.kind is LimitKind.INTERVAL:
            return f"[{self.lo:.17g}, {self.hi:.17g}]"
        return "{" + ", ".join(f"{v:.17g}" for v in self.values) + "}"


def _odd_odd(p, q, parity):
    if parity is Parity.ODD:
        ms = [2 * l for l in range((q - 1) // 2 + 1)]
    else:
        ms = [2 * l + 1 for l in range((q - 3) // 2 + 1)] if q >= 3 else []
    return [(s, Fraction(m * m, q * q)) for m in ms for s in (1, -1)]


def _even_num(p, q, parity):
    # x + 1 = 2p/q with q odd; signs are tied to s, no symmetrisation
    out = []
    for s in (0, 1):
        if parity is Parity.ODD:
            lo, hi = s - p + 1, s - p + q - 1
            ls = range(math.ceil(lo / 2), hi // 2 + 1)
            out += [((-1) ** s, Fraction((4 * l + 2 * p - 2 * s - q) ** 2, q * q)) for l in ls]
        else:
            lo, hi = s + 1, s + q - 1
            ls = range(math.ceil(lo / 2), hi // 2 + 1)
            out += [((-1) ** s, Fraction((4 * l - 2 * s - q) ** 2, q * q)) for l in ls]
    return out


def _even_den(p, q, parity):
    # x + 1 = p/(2q) with p odd
    if parity is Parity.ODD:
        r2 = [Fraction((2 * l + 1) ** 2, 4 * q * q) for l in range(q)]
    else:
        r2 = [Fraction(l * l, q * q) for l in range(q)]
    return [(s, r) for r in r2 for s in (1, -1)]


def denominator_limit_set(x: RationalPoint, parity: Parity) -> LimitSet:
    """All limits of D_n(x)/n along sequences of one parity for which x is regular."""
    if not isinstance(x, RationalPoint):
        raise TypeError("x must be a RationalPoint (x + 1 = num/den in lowest terms)")
    a, b = x.num, x.den
    cls = x.parity_class
    if cls is ParityClass.BOTH_ODD:
        pairs = _odd_odd(a, b, parity)
    elif cls is ParityClass.NUM_EVEN:
        pairs = _even_num(a // 2, b, parity)
    else:
        pairs = _even_den(a, b // 2, parity)
    pairs = sorted(set(pairs), key=lambda sr: sr[0] * float(A(float(sr[1]))))
    values, rho2, signs = [], [], []
    for s, r in pairs:
        v = s * float(A(float(r)))
        if values and abs(v - values[-1]) <= DEDUP_TOL * max(1.0, abs(v)):
            continue
        values.append(v)
        rho2.append(r)
        signs.append(s)
    return LimitSet(parity, LimitKind.FINITE, tuple(values), rho_squared=tuple(rho2),
                    signs=tuple(signs))


def error_limit_set(model, x: float, x_rational: Optional[RationalPoint], parity: Parity) -> LimitSet:
    """Limits of n (B_n f(x) - f(x)) along sequences of one parity.

    The caller declares rationality by passing ``x_rational``; a float cannot
    tell.  Rational x gives {bias / y : y a denominator limit}, irrational x the
    interval [-2|bias|/pi, 2|bias|/pi].
    """
    if x_rational is not None:
        if abs(float(x_rational.x) - float(x)) > 1e-12:
            raise ValueError(f"x = {x} does not match the declared rational {x_rational.x}")
        x = float(x_rational.x)
    b = bias(model, x).for_parity(parity)
    if x_rational is None:
        r = 2.0 * abs(b) / math.pi
        return LimitSet(parity, LimitKind.INTERVAL, lo=-r, hi=r)
    dset = denominator_limit_set(x_rational, parity)
    vals = sorted({b / y for y in dset.values})
    dedup = []
    for v in vals:
        if not dedup or abs(v - dedup[-1]) > DEDUP_TOL * max(1.0, abs(v)):
            dedup.append(v)
    return LimitSet(parity, LimitKind.FINITE, tuple(dedup))


def accumulation_scan(model, x: float, parity: Parity, n_min: int, n_max: int,
                      x_rational: Optional[RationalPoint] = None) -> list[tuple[int, float]]:
    """(n, n (B_n f(x) - f(x))) for every n of the given parity in [n_min, n_max].

    n for which x is a node are skipped; with ``x_rational`` the test is exact,
    otherwise bitwise.
    """
    if not n_min < n_max:
        raise ValueError("need n_min < n_max")
    x = float(x)
    fx = float(model.values(np.array([x]))[0])
    ns = [n for n in range(max(1, n_min), n_max + 1) if parity.matches(n)]
    if x_rational is not None:
        ns = [n for n in ns if not x_rational.is_node(n)]
    else:
        ns = [n for n in ns if not is_node(n, x)]

    def one(n):
        return n, n * (float(interpolate(model.f, n, x, BERRUT)) - fx)

    return parallel_map(one, ns)
