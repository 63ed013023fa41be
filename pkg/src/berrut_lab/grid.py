"""Equispaced nodes on [-1, 1] and the cell decomposition of a point.

A point x in (-1, 1) that is not a node of the grid with n intervals lies
between the nodes of index ``iota`` and ``iota + 1``; ``rho`` in (-1, 1)
is its offset from the midpoint of that cell in units of half a cell:

    x = (2 * iota + rho + 1) / n - 1
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

Real = Union[float, Fraction]

#: Extended reals are plain floats; ``math.inf`` and ``-math.inf`` are the two
#: points added by the compactification and compare correctly with every float.
POS_INF = math.inf
NEG_INF = -math.inf


class Parity(enum.Enum):
    ODD = 1
    EVEN = 0

    def matches(self, n: int) -> bool:
        return n % 2 == self.value

    @classmethod
    def of(cls, n: int) -> "Parity":
        return cls.ODD if n % 2 else cls.EVEN

    @classmethod
    def parse(cls, text: str) -> "Parity":
        try:
            return cls[text.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown parity {text!r}") from None


class NodeSingularity(ValueError):
    """Raised when a quantity with a pole at the nodes is requested at a node."""

    def __init__(self, n: int, x):
        super().__init__(f"node singularity: x = {x!r} is a node of the grid with n = {n}")
        self.n = n
        self.x = x


def _check_n(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    return int(n)


@dataclass(frozen=True)
class UniformGrid:
    """The n + 1 nodes 2k/n - 1, k = 0..n."""

    n: int

    def __post_init__(self):
        _check_n(self.n)

    def node(self, k: int) -> float:
        if not 0 <= k <= self.n:
            raise IndexError(f"node index {k} outside 0..{self.n}")
        return 2.0 * k / self.n - 1.0

    def exact_node(self, k: int) -> Fraction:
        return Fraction(2 * k - self.n, self.n)

    @property
    def nodes(self) -> np.ndarray:
        return nodes(self.n)

    @property
    def spacing(self) -> float:
        return 2.0 / self.n


def nodes(n: int) -> np.ndarray:
    """Nodes of the grid with n intervals; the endpoints are exactly -1 and 1."""
    n = _check_n(n)
    return 2.0 * np.arange(n + 1) / n - 1.0


@dataclass(frozen=True)
class PositionDecomposition:
    iota: int
    rho: Real
    is_node: bool

    def reconstruct(self, n: int) -> Real:
        if self.is_node:
            return Fraction(2 * self.iota - n, n) if isinstance(self.rho, Fraction) else 2.0 * self.iota / n - 1.0
        if isinstance(self.rho, Fraction):
            return Fraction(2 * self.iota + 1, n) + self.rho / n - 1
        return (2 * self.iota + self.rho + 1) / n - 1


def _node_float(k, n):
    return 2.0 * k / n - 1.0


def decompose_array(n: int, x):
    """Vectorised decomposition: returns (iota, rho, is_node) arrays.

    Node membership is bitwise equality with one of the two neighbouring
    nodes, and cells are delimited by the floating point nodes that the
    barycentric sums use.  At nodes ``iota`` is the node index and ``rho`` is 0.
    """
    n = _check_n(n)
    x = np.asarray(x, dtype=float)
    if np.any(~((x > -1.0) & (x < 1.0))):
        raise ValueError("x must lie strictly inside (-1, 1)")
    iota = np.floor(n * (x + 1.0) / 2.0).astype(np.int64)
    iota = np.clip(iota, 0, n - 1)
    left = _node_float(iota, n)
    right = _node_float(iota + 1, n)
    at_left = x == left
    at_right = x == right
    is_node = at_left | at_right
    # the floor of a rounded product may land in a neighbouring cell
    up = ~is_node & (x > right) & (iota < n - 1)
    down = ~is_node & (x < left) & (iota > 0)
    iota = np.where(up, iota + 1, np.where(down, iota - 1, iota))
    rho = n * (x - _node_float(iota, n)) - 1.0
    lo, hi = np.nextafter(-1.0, 0.0), np.nextafter(1.0, 0.0)
    rho = np.clip(rho, lo, hi)
    iota = np.where(at_right, iota + 1, iota)
    rho = np.where(is_node, 0.0, rho)
    return iota, rho, is_node


def cell_offsets(n: int, x):
    """(iota, 1 + rho, 1 - rho, is_node) with both offsets computed directly.

    1 + rho = n (x - x_iota) and 1 - rho = n (x_{iota+1} - x) keep full
    relative accuracy when x is very close to a node, where 1 - rho^2
    formed from a rounded rho would not.
    """
    iota, rho, node = decompose_array(n, x)
    x = np.asarray(x, dtype=float)
    left = n * (x - _node_float(iota, n))
    right = n * (_node_float(np.minimum(iota + 1, n), n) - x)
    left = np.where(node, 0.0, np.clip(left, 0.0, 2.0))
    right = np.where(node, 2.0, np.clip(right, 0.0, 2.0))
    return iota, left, right, node


def decompose(n: int, x: float) -> PositionDecomposition:
    """Cell index and offset of a floating point x in (-1, 1)."""
    iota, rho, is_node = decompose_array(n, np.array([float(x)]))
    return PositionDecomposition(int(iota[0]), float(rho[0]), bool(is_node[0]))


def is_node(n: int, x) -> np.ndarray | bool:
    """Bitwise node membership for floats in [-1, 1]."""
    n = _check_n(n)
    xa = np.asarray(x, dtype=float)
    k = np.clip(np.floor(n * (xa + 1.0) / 2.0).astype(np.int64), 0, n)
    hit = (xa == _node_float(k, n)) | (xa == _node_float(np.minimum(k + 1, n), n))
    hit |= xa == _node_float(np.maximum(k - 1, 0), n)
    return bool(hit) if np.ndim(x) == 0 else hit


class ParityClass(enum.Enum):
    """Parities of (num, den) for x + 1 = num/den in lowest terms."""

    BOTH_ODD = "odd/odd"
    NUM_EVEN = "even/odd"
    DEN_EVEN = "odd/even"


@dataclass(frozen=True)
class RationalPoint:
    """A rational point x in (-1, 1) stored as x + 1 = num/den in lowest terms."""

    num: int
    den: int

    def __post_init__(self):
        if self.den <= 0:
            raise ValueError("den must be positive")
        if math.gcd(self.num, self.den) != 1:
            raise ValueError(f"{self.num}/{self.den} is not in lowest terms")
        if not 0 < self.num < 2 * self.den:
            raise ValueError(f"x + 1 = {self.num}/{self.den} puts x outside (-1, 1)")

    @classmethod
    def from_x(cls, x) -> "RationalPoint":
        """From an exact value of x (int, Fraction or a 'p/q' string)."""
        s = Fraction(x) + 1
        return cls(s.numerator, s.denominator)

    @classmethod
    def parse(cls, text: str) -> "RationalPoint":
        """Parse 'num/den' meaning x + 1 = num/den (must be in lowest terms)."""
        try:
            a, b = text.split("/")
            return cls(int(a), int(b))
        except ValueError as exc:
            raise ValueError(f"malformed rational {text!r}: {exc}") from None

    @property
    def x(self) -> Fraction:
        return Fraction(self.num, self.den) - 1

    def __float__(self) -> float:
        return float(self.x)

    @property
    def parity_class(self) -> ParityClass:
        if self.num % 2 and self.den % 2:
            return ParityClass.BOTH_ODD
        if self.num % 2 == 0:
            return ParityClass.NUM_EVEN
        return ParityClass.DEN_EVEN

    def is_node(self, n: int) -> bool:
        # x_k = 2k/n - 1 = num/den - 1  <=>  k = n num / (2 den)
        return (_check_n(n) * self.num) % (2 * self.den) == 0


def decompose_rational(n: int, x: RationalPoint) -> PositionDecomposition:
    """Exact decomposition in integer arithmetic; ``rho`` is a Fraction."""
    n = _check_n(n)
    a, b = x.num, x.den
    if (n * a) % (2 * b) == 0:
        return PositionDecomposition((n * a) // (2 * b), Fraction(0), True)
    iota = (n * a) // (2 * b)
    rho = Fraction(n * a - (2 * iota + 1) * b, b)
    return PositionDecomposition(iota, rho, False)
