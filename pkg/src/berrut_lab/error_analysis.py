"""The bias-free remainder of the error numerator and uniform convergence studies.

For x off the nodes, N_n(f, x) - f(x) D_n(x) = Delta_n(f, x) + bias, with

    Delta_n(f, x) = sum_k c_k (-1)^k (f(x_k) - f(x)) / (x - x_k),

c_0 = c_n = 1/2 and c_k = 1 otherwise, and the bias equal to the odd bias for
odd n and the even bias for even n.  Delta_n is defined as 0 at the nodes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels
from ._parallel import parallel_map
from .barycentric import BERRUT, ENDPOINT_HALVED, interpolate, probe_grid, regular_probes
from .grid import NodeSingularity, Parity, UniformGrid, nodes
from .limits import even_bias, odd_bias, parity_bias

NORM_EDGE = 1.0 - 1e-6


def _probe_array(x):
    return np.ascontiguousarray(np.atleast_1d(np.asarray(x, dtype=float)).ravel())


def _shifted_sum(model, n, x, weights):
    """sum_k w_k (f(x_k) - f(x)) / (x - x_k); nan where x is a node."""
    xs = _probe_array(x)
    if np.any(np.abs(xs) > 1.0):
        raise ValueError("x must lie in [-1, 1]")
    grid_nodes = nodes(n)
    fk = model.values(grid_nodes)
    fx = model.values(xs)
    return xs, _kernels.cauchy_sums(xs, fx, grid_nodes, weights.weights(n), fk)


def delta(model, n: int, x):
    """The remainder Delta_n(f, x); exactly 0 at the nodes."""
    UniformGrid(n)
    xs, out = _shifted_sum(model, n, x, ENDPOINT_HALVED)
    out = np.where(np.isnan(out), 0.0, out)
    return float(out[0]) if np.ndim(x) == 0 else out.reshape(np.shape(x))


def error_numerator(model, n: int, x):
    """N_n(f, x) - f(x) D_n(x) summed term by term, without cancellation against f."""
    xs, out = _shifted_sum(model, n, x, BERRUT)
    if np.any(np.isnan(out)):
        raise NodeSingularity(n, xs[np.isnan(out)][0])
    return float(out[0]) if np.ndim(x) == 0 else out.reshape(np.shape(x))


def exact_error_numerator(model, n: int, x: Fraction) -> Fraction:
    """N_n(f, x) - f(x) D_n(x) in rational arithmetic (needs ``model.f_exact``)."""
    if model.f_exact is None:
        raise ValueError(f"{model.name} has no exact evaluator")
    grid = UniformGrid(n)
    x = Fraction(x)
    fx = model.f_exact(x)
    total = Fraction(0)
    for k in range(n + 1):
        xk = grid.exact_node(k)
        if xk == x:
            raise NodeSingularity(n, x)
        term = (model.f_exact(xk) - fx) / (x - xk)
        total += term if k % 2 == 0 else -term
    return total


def decomposition_check(model, n: int, x):
    """|(B_n f - f)(x) - (Delta_n(f, x) + bias(f, x)) / D_n(x)| at points off the nodes."""
    xs = _probe_array(x)
    grid_nodes = nodes(n)
    fk = model.values(grid_nodes)
    num, den = _kernels.numerator_denominator(xs, grid_nodes, BERRUT.weights(n), fk)
    if np.any(np.isnan(den)):
        raise NodeSingularity(n, xs[np.isnan(den)][0])
    lhs = num / den - model.values(xs)
    rhs = (delta(model, n, xs) + parity_bias(model.f, xs, Parity.of(n))) / den
    out = np.abs(lhs - rhs)
    return float(out[0]) if np.ndim(x) == 0 else out.reshape(np.shape(x))


def bias_norms(model, probes: int = 2001) -> tuple[float, float]:
    """Sup norms of the odd and even biases, estimated on interior probes."""
    xs = np.concatenate([[-NORM_EDGE], probe_grid(probes), [NORM_EDGE]])
    return (float(np.max(np.abs(odd_bias(model.f, xs)))),
            float(np.max(np.abs(even_bias(model.f, xs)))))


def delta_sup(model, n: int, probes: int = 2001) -> float:
    xs = regular_probes(n, probes)
    return float(np.max(np.abs(delta(model, n, xs)))) if xs.size else 0.0


@dataclass(frozen=True)
class ConvergenceRecord:
    n: int
    sup_err: float
    scaled_err: float
    bias_corrected: float


def convergence_record(model, n: int, probes: int = 2001) -> ConvergenceRecord:
    """Sup errors of B_n f on the probe grid, raw and with the bias removed."""
    xs = regular_probes(n, probes)
    if xs.size == 0:
        return ConvergenceRecord(n, 0.0, 0.0, 0.0)
    grid_nodes = nodes(n)
    num, den = _kernels.numerator_denominator(xs, grid_nodes, BERRUT.weights(n),
                                              model.values(grid_nodes))
    err = num / den - model.values(xs)
    corrected = err - parity_bias(model.f, xs, Parity.of(n)) / den
    sup = float(np.max(np.abs(err)))
    return ConvergenceRecord(n, sup, n * sup, n * float(np.max(np.abs(corrected))))


def uniform_study(model, n_list: Sequence[int], parity: Parity | None,
                  probes: int = 2001) -> list[ConvergenceRecord]:
    """One ConvergenceRecord per n; ``parity=None`` accepts both parities."""
    n_list = [int(n) for n in n_list]
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError("n_list must be strictly increasing")
    if parity is not None and not all(parity.matches(n) for n in n_list):
        raise ValueError(f"every n must be {parity.name.lower()}")
    return parallel_map(lambda n: convergence_record(model, n, probes), n_list)


def bv_bound_rhs(model, probes: int = 2001) -> float:
    """TV(f')/2 + max(||O(f)||, ||E(f)||)."""
    if model.tv_fprime is None:
        raise ValueError(f"{model.name} has no total variation of f' on record")
    return model.tv_fprime / 2.0 + max(bias_norms(model, probes))


def bv_bound_check(model, n: int, probes: int = 2001, slack: float = 1e-6) -> bool:
    """n sup|B_n f - f| <= TV(f')/2 + max(||O||, ||E||) + slack on the probe grid."""
    rhs = bv_bound_rhs(model, probes)
    rec = convergence_record(model, n, probes)
    return rec.scaled_err <= rhs + slack


def rational_probes(n: int, probes: int) -> list[Fraction]:
    """-1 + (2j + 1)/probes as Fractions, dropping exact nodes of the grid."""
    out = []
    for j in range(probes):
        x = Fraction(2 * j + 1, probes) - 1
        if (x + 1) * n % 2 != 0:
            out.append(x)
    return out


def exact_sup_error(model, n: int, probes: int = 21) -> float:
    """sup |B_n f - f| over rational probes, with the error numerator summed exactly.

    Only the denominator D_n is evaluated in floating point, so the result
    has small relative error even when the true error is far below the
    rounding level of f, and is exactly 0 when the numerator vanishes.
    """
    worst = 0.0
    grid_nodes = nodes(n)
    weights = BERRUT.weights(n)
    ones = np.zeros(n + 1)
    for x in rational_probes(n, probes):
        num = exact_error_numerator(model, n, x)
        if num == 0:
            continue
        den = _kernels.numerator_denominator(np.array([float(x)]), grid_nodes, weights, ones)[1][0]
        worst = max(worst, abs(float(num) / float(den)))
    return worst
