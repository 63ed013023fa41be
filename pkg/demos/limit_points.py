"""Oscillation of n (B_n f(x) - f(x)) at a rational point and containment at an irrational one."""

import math

from berrut_lab.grid import Parity, RationalPoint
from berrut_lab.limits import accumulation_scan, bias, denominator_limit_set, error_limit_set
from berrut_lab.models import get_model

quad = get_model("quadratic")

point = RationalPoint.parse("1/1")  # x = 0
print("denominator limits at x = 0, odd n:", denominator_limit_set(point, Parity.ODD).values)
print("error limits at x = 0, odd n:", error_limit_set(quad, 0.0, point, Parity.ODD).values)
rows = accumulation_scan(quad, 0.0, Parity.ODD, 10001, 10021, point)
for n, v in rows:
    print(f"  n={n}  n*err={v:+.6f}")

x = math.sqrt(2.0) - 1.0
o = bias(quad, x).odd_bias
lim = error_limit_set(quad, x, None, Parity.ODD)
rows = accumulation_scan(quad, x, Parity.ODD, 1001, 5001)
values = [v for _, v in rows]
print(f"x = sqrt(2) - 1: odd bias {o:.5f}, limit interval [{lim.lo:.5f}, {lim.hi:.5f}]")
print(f"  observed n*err over {len(values)} odd n: [{min(values):.5f}, {max(values):.5f}]")
