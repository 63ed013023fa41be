import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from berrut_lab.asymptotics import (A, A_inverse, ASeriesConfig, H_AT_ONE, H_AT_ZERO, HALF_PI,
                                    denominator_ratio, h, residual, residual_bound, tail_bound)
from berrut_lab.barycentric import denominator
from berrut_lab.grid import NodeSingularity, cell_offsets, decompose

from oracles import series_A


@pytest.mark.parametrize("x", [0.0, 1e-9, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999999])
def test_A_against_mpmath(x):
    assert A(x) == pytest.approx(float(series_A(x)), rel=0, abs=1e-12 * max(1.0, A(x)))


def test_special_values():
    assert A(0.0) == pytest.approx(HALF_PI, abs=1e-12)
    assert h(0.0) == pytest.approx(-0.429204, abs=1e-6)
    assert h(0.0) == pytest.approx(H_AT_ZERO, abs=1e-12)
    assert h(1.0) == pytest.approx(H_AT_ONE, abs=1e-12)
    assert A(1.0) == math.inf


@pytest.mark.parametrize("x", [0.0, 0.25, 0.5, 0.99])
def test_sandwich(x):
    gap = A(x) - 2.0 / (1.0 - x)
    assert -0.5 <= gap <= (math.pi - 4.0) / 2.0 + 1e-15


def test_monotone_on_grid():
    vals = A(np.linspace(0.0, 1.0 - 1e-6, 1000))
    assert np.all(np.diff(vals) > 0)


@pytest.mark.parametrize("bad", [-0.1, 1.1, np.nan])
def test_A_domain(bad):
    with pytest.raises(ValueError):
        A(bad)


def test_config_validation_and_pairs():
    with pytest.raises(ValueError):
        ASeriesConfig(tol=1e-16)
    with pytest.raises(ValueError):
        ASeriesConfig(max_pairs=4)
    assert ASeriesConfig(tol=1e-6).pairs() <= ASeriesConfig(tol=1e-14).pairs()
    loose = ASeriesConfig(tol=1e-6)
    assert A(0.3, loose) == pytest.approx(float(series_A(0.3)), abs=1e-6)


def test_A_inverse_endpoints():
    assert A_inverse(HALF_PI) == 0.0
    assert A_inverse(math.inf) == 1.0
    with pytest.raises(ValueError):
        A_inverse(1.5)


def test_A_inverse_round_trip_example():
    assert A_inverse(A(0.37)) == pytest.approx(0.37, abs=1e-9)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.0, 0.999999))
def test_A_inverse_round_trip(x):
    y = A(x)
    assert abs(A(A_inverse(y)) - y) <= 1e-10 * max(1.0, y)
    assert A_inverse(y) == pytest.approx(x, abs=1e-9)


def test_residual_examples():
    d = decompose(1001, 1 / math.pi)
    # the classical bound 1/(4(1+iota)) + 1/(4(n-iota)) is exceeded here by 4.9e-7
    # (confirmed with 40-digit arithmetic); the first-term tail bound holds
    assert residual(1001, 1 / math.pi) == pytest.approx(0.0011102720386724, abs=1e-12)
    assert residual(1001, 1 / math.pi) - residual_bound(1001, d.iota) == pytest.approx(4.9e-7, rel=0.01)
    assert residual(1001, 1 / math.pi) <= tail_bound(1001, d.iota, d.rho)
    assert residual(101, 0.0) <= 0.5
    with pytest.raises(NodeSingularity):
        residual(100, 0.0)


@settings(max_examples=200, deadline=None)
@given(n=st.integers(10, 5000), x=st.floats(-0.9999, 0.9999))
def test_lower_bounds_and_tail_bound(n, x):
    d = decompose(n, x)
    _, left, right, _ = cell_offsets(n, np.array([x]))
    if d.is_node or min(left[0], right[0]) < 1e-290:
        return
    D = denominator(n, x)
    assert np.sign(D) == (-1) ** d.iota
    assert abs(D) / n >= 1 - 1e-12
    a = A(d.rho ** 2, one_minus_x=(1 + d.rho) * (1 - d.rho))
    assert abs(D) / n >= a / 2 - 1e-10
    assert a / 2 >= 3 / (4 * (1 - d.rho ** 2)) - 1e-10
    # A(rho^2) ~ 1/(1 - rho^2) can be huge next to a node; allow for its rounding
    assert residual(n, x) <= tail_bound(n, d.iota, d.rho) + 1e-12 * abs(D) / n


def test_classical_residual_bound_fails_near_low_cells():
    """1/(4(1+iota)) + 1/(4(n-iota)) is not a bound: n = 572, iota = 0 exceeds it by 14%."""
    x = -0.9993986197861542
    d = decompose(572, x)
    assert d.iota == 0
    assert residual(572, x) > 1.14 * residual_bound(572, 0)
    assert residual(572, x) <= tail_bound(572, d.iota, d.rho)


def test_ratio_tends_to_one():
    x = math.sqrt(2) - 1
    assert abs(denominator_ratio(10 ** 5, x) - 1) <= 0.01
