"""Uniform convergence of Berrut's interpolant on an odd ladder of n.

The raw scaled error n * sup|B_n f - f| settles near a constant set by the
bias, while the bias-corrected version keeps shrinking.
"""

from berrut_lab.error_analysis import bv_bound_rhs, uniform_study
from berrut_lab.grid import Parity
from berrut_lab.models import get_model

for name in ("exp", "xabsx", "runge"):
    model = get_model(name)
    rhs = bv_bound_rhs(model)
    print(f"{name}: bound on n*sup_err = {rhs:.4f}")
    for rec in uniform_study(model, [51, 101, 201, 401, 801, 1601, 3201], Parity.ODD):
        print(f"  n={rec.n:5d}  n*err={rec.scaled_err:.5f}  bias-corrected={rec.bias_corrected:.3e}")
