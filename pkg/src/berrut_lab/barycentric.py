"""Berrut's interpolant and the general second barycentric form on equispaced nodes.

With nodes x_k = 2k/n - 1 and weights w_k,

    N(x) = sum_k w_k f(x_k) / (x - x_k),   D(x) = sum_k w_k / (x - x_k),

and the interpolant is N/D away from the nodes and f(x_k) at x_k.  Berrut's
scheme uses w_k = (-1)^k; the endpoint-halved scheme keeps the signs but
gives the first and last weights magnitude 1/2.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .grid import NodeSingularity, UniformGrid, is_node, nodes


class WeightKind(enum.Enum):
    BERRUT = "berrut"
    ENDPOINT_HALVED = "halved"
    CUSTOM = "custom"


@dataclass(frozen=True)
class WeightScheme:
    kind: WeightKind = WeightKind.BERRUT
    custom: Optional[tuple] = None

    def __post_init__(self):
        if self.kind is WeightKind.CUSTOM:
            if self.custom is None:
                raise ValueError("custom scheme needs explicit weights")
            if any(w == 0 for w in self.custom):
                raise ValueError("custom weights must be nonzero")
        elif self.custom is not None:
            raise ValueError("explicit weights only apply to the custom scheme")

    @classmethod
    def berrut(cls) -> "WeightScheme":
        return cls(WeightKind.BERRUT)

    @classmethod
    def endpoint_halved(cls) -> "WeightScheme":
        return cls(WeightKind.ENDPOINT_HALVED)

    @classmethod
    def from_weights(cls, weights: Sequence[float]) -> "WeightScheme":
        return cls(WeightKind.CUSTOM, tuple(float(w) for w in weights))

    @classmethod
    def parse(cls, name: str) -> "WeightScheme":
        kind = WeightKind(name.strip().lower())
        if kind is WeightKind.CUSTOM:
            raise ValueError("custom weights cannot be given by name")
        return cls(kind)

    def weights(self, n: int) -> np.ndarray:
        if self.kind is WeightKind.CUSTOM:
            w = np.asarray(self.custom, dtype=float)
            if w.shape != (n + 1,):
                raise ValueError(f"custom scheme has {w.size} weights, grid needs {n + 1}")
            return w
        w = np.where(np.arange(n + 1) % 2 == 0, 1.0, -1.0)
        if self.kind is WeightKind.ENDPOINT_HALVED:
            w[0] *= 0.5
            w[-1] *= 0.5
        return w


BERRUT = WeightScheme.berrut()
ENDPOINT_HALVED = WeightScheme.endpoint_halved()


@dataclass(frozen=True)
class SampledFunction:
    grid: UniformGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.grid.n + 1,):
            raise ValueError(f"need {self.grid.n + 1} samples, got shape {values.shape}")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, f, n: int) -> "SampledFunction":
        grid = UniformGrid(n)
        return cls(grid, np.asarray(f(grid.nodes), dtype=float) * np.ones(n + 1))

    @property
    def n(self) -> int:
        return self.grid.n


def _as_probe_array(x):
    xa = np.atleast_1d(np.asarray(x, dtype=float)).ravel()
    return np.ascontiguousarray(xa)


def _unwrap(x, out):
    return float(out[0]) if np.ndim(x) == 0 else out.reshape(np.shape(x))


def _sums(n, weights, values, x):
    xs = _as_probe_array(x)
    if np.any(np.abs(xs) > 1.0):
        raise ValueError("x must lie in [-1, 1]")
    return xs, _kernels.numerator_denominator(xs, nodes(n), weights, values)


def denominator(n: int, x, weights: WeightScheme = BERRUT):
    """D_n(x); raises NodeSingularity if any x is a node."""
    grid = UniformGrid(n)
    xs, (_, den) = _sums(grid.n, weights.weights(grid.n), np.ones(grid.n + 1), x)
    if np.any(np.isnan(den)):
        raise NodeSingularity(n, xs[np.isnan(den)][0])
    return _unwrap(x, den)


def numerator(samples: SampledFunction, x, weights: WeightScheme = BERRUT):
    """N_n(f, x); raises NodeSingularity if any x is a node."""
    xs, (num, _) = _sums(samples.n, weights.weights(samples.n), samples.values, x)
    if np.any(np.isnan(num)):
        raise NodeSingularity(samples.n, xs[np.isnan(num)][0])
    return _unwrap(x, num)


def evaluate(samples: SampledFunction, weights: WeightScheme, x):
    """The barycentric interpolant; exact sample values at the nodes."""
    xs, (num, den) = _sums(samples.n, weights.weights(samples.n), samples.values, x)
    out = num / den
    at_node = np.isnan(den)
    if np.any(at_node):
        k = np.rint((xs[at_node] + 1.0) * samples.n / 2.0).astype(np.int64)
        out[at_node] = samples.values[k]
    return _unwrap(x, out)


def interpolate(f, n: int, x, weights: WeightScheme = BERRUT):
    """Sample f on the grid with n intervals and evaluate the interpolant at x."""
    return evaluate(SampledFunction.from_function(f, n), weights, x)


def probe_grid(probes: int) -> np.ndarray:
    """Midpoints -1 + (2j + 1)/P, j = 0..P-1."""
    if probes < 2:
        raise ValueError("need at least 2 probes")
    return -1.0 + (2.0 * np.arange(probes) + 1.0) / probes


def regular_probes(n: int, probes: int) -> np.ndarray:
    """Probe grid with every point that is a node of grid n removed.

    Membership is decided exactly (n (2j + 1) divisible by 2P) and by bitwise
    comparison, whichever catches more.
    """
    j = np.arange(probes, dtype=np.int64)
    exact_hit = (n * (2 * j + 1)) % (2 * probes) == 0
    xs = probe_grid(probes)
    keep = ~(exact_hit | is_node(n, xs))
    return xs[keep]


def sup_error(model, n: int, weights: WeightScheme = BERRUT, probes: int = 2001) -> float:
    """max over the regular probe points of |interpolant - f|."""
    xs = regular_probes(n, probes)
    if xs.size == 0:
        return 0.0
    approx = interpolate(model.f, n, xs, weights)
    return float(np.max(np.abs(approx - model.values(xs))))
