import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from berrut_lab.asymptotics import A
from berrut_lab.grid import Parity, ParityClass, RationalPoint
from berrut_lab.limits import (LimitKind, accumulation_scan, bias, denominator_limit_set,
                               error_limit_set, even_bias, odd_bias)
from berrut_lab.models import LIBRARY, get_model

from oracles import limit_pairs_brute_force


class TestBias:
    def test_quadratic_at_zero(self):
        b = bias(get_model("quadratic"), 0.0)
        assert b.odd_bias == pytest.approx(1.0) and b.even_bias == pytest.approx(0.0, abs=1e-15)
        assert b.for_parity(Parity.ODD) == b.odd_bias

    @pytest.mark.parametrize("x", [-0.9, -0.31, 0.0, 0.5, 0.77])
    def test_linear_and_constant(self, x):
        assert abs(bias(get_model("linear"), x).odd_bias) <= 1e-14
        c = bias(get_model("const1"), x)
        assert c.odd_bias == 0.0 and c.even_bias == 0.0

    @pytest.mark.parametrize("x", [-1.0, 1.0])
    def test_rejects_endpoints(self, x):
        with pytest.raises(ValueError):
            bias(get_model("exp"), x)

    @pytest.mark.parametrize("name", ["quadratic", "xabsx", "exp", "sinpi", "runge"])
    def test_norms_bounded_by_derivative(self, name):
        m = get_model(name)
        xs = np.linspace(-1 + 1e-6, 1 - 1e-6, 2001)
        fp = np.max(np.abs(m.f_prime(xs)))
        assert np.max(np.abs(odd_bias(m.f, xs))) <= fp + 1e-9
        assert np.max(np.abs(even_bias(m.f, xs))) <= fp + 1e-9


@pytest.mark.parametrize("num,den,parity,expected", [
    (1, 1, Parity.ODD, [-math.pi / 2, math.pi / 2]),
    (1, 3, Parity.EVEN, None),
    (1, 2, Parity.EVEN, [-math.pi / 2, math.pi / 2]),
])
def test_denominator_limit_examples(num, den, parity, expected):
    s = denominator_limit_set(RationalPoint(num, den), parity)
    if expected is None:
        a = A(1 / 9)
        expected = [-a, a]
    assert s.kind is LimitKind.FINITE
    assert list(s.values) == pytest.approx(expected, abs=1e-12)


def _points(max_den):
    for b in range(1, max_den):
        for a in range(1, 2 * b):
            if math.gcd(a, b) == 1:
                yield a, b


@pytest.mark.parametrize("b", range(1, 30))
def test_limit_sets_against_enumeration(b):
    for a in range(1, 2 * b):
        if math.gcd(a, b) != 1:
            continue
        for parity in (Parity.ODD, Parity.EVEN):
            s = denominator_limit_set(RationalPoint(a, b), parity)
            pairs = limit_pairs_brute_force(a, b, parity is Parity.ODD)
            want = sorted({sg * float(A(float(r))) for sg, r in pairs})
            assert len(s) == len(want), (a, b, parity)
            assert list(s.values) == pytest.approx(want, rel=1e-12)


@pytest.mark.parametrize("a,b", list(_points(16)))
def test_limit_set_structure(a, b):
    point = RationalPoint(a, b)
    q = b
    allowed = [A(k * k / q / q) for k in range(q)]
    for parity in (Parity.ODD, Parity.EVEN):
        s = denominator_limit_set(point, parity)
        assert 0.0 not in s.values
        assert len(s) <= 2 * q
        for v in s.values:
            assert min(abs(abs(v) - w) for w in allowed) <= 1e-12 * abs(v)
        if point.parity_class is not ParityClass.NUM_EVEN:
            assert sorted(-v for v in s.values) == pytest.approx(list(s.values))


def test_num_even_sets_are_symmetric_in_practice():
    """The even-numerator index ranges are not symmetric term by term, yet
    the resulting sets are for every small denominator."""
    for a, b in _points(14):
        if a % 2:
            continue
        for p in (Parity.ODD, Parity.EVEN):
            vals = denominator_limit_set(RationalPoint(a, b), p).values
            assert sorted(-v for v in vals) == pytest.approx(list(vals))


def test_rejects_float_point():
    with pytest.raises(TypeError):
        denominator_limit_set(0.5, Parity.ODD)


def test_error_limit_sets():
    q = get_model("quadratic")
    s = error_limit_set(q, 0.0, RationalPoint(1, 1), Parity.ODD)
    assert list(s.values) == pytest.approx([-2 / math.pi, 2 / math.pi])
    assert s.distance(2 / math.pi) < 1e-12 and s.distance(0.5) > 0.1
    lin = error_limit_set(get_model("linear"), math.sqrt(2) - 1, None, Parity.ODD)
    assert lin.kind is LimitKind.INTERVAL and lin.hi <= 1e-14 and lin.lo >= -1e-14
    x = math.sqrt(2) - 1
    irr = error_limit_set(q, x, None, Parity.ODD)
    o = bias(q, x).odd_bias
    assert irr.hi == pytest.approx(2 * abs(o) / math.pi) and irr.lo == -irr.hi
    assert irr.distance(0.0) == 0.0 and irr.distance(irr.hi + 1) == pytest.approx(1)
    with pytest.raises(ValueError):
        error_limit_set(q, 0.1, RationalPoint(1, 1), Parity.ODD)


def test_scan_linear_decays():
    rows = accumulation_scan(get_model("linear"), 0.3, Parity.ODD, 3, 2001)
    assert all(n % 2 == 1 for n, _ in rows)
    assert max(abs(v) for _, v in rows) <= 1e-9


def test_scan_skips_nodes():
    rows = accumulation_scan(get_model("quadratic"), -0.5, Parity.EVEN, 2, 40, RationalPoint(1, 2))
    assert all(n % 4 != 0 for n, _ in rows)
    with pytest.raises(ValueError):
        accumulation_scan(get_model("quadratic"), 0.0, Parity.ODD, 5, 5)


def test_scan_at_zero_approaches_limits():
    rows = accumulation_scan(get_model("quadratic"), 0.0, Parity.ODD, 10001, 10401, RationalPoint(1, 1))
    target = 2 / math.pi
    assert all(abs(abs(v) - target) <= 0.02 for _, v in rows)
    assert {np.sign(v) for _, v in rows} == {-1.0, 1.0}


def test_scan_signs_follow_iota():
    """Along odd n at x = -2/3 the sign of the scaled error is sign(E or O) times (-1)^iota."""
    from berrut_lab.grid import decompose_rational
    point = RationalPoint(1, 3)
    m = get_model("quadratic")
    o = bias(m, -2 / 3).odd_bias
    for n, v in accumulation_scan(m, -2 / 3, Parity.ODD, 3001, 3101, point):
        assert np.sign(v) == np.sign(o) * (-1) ** decompose_rational(n, point).iota
