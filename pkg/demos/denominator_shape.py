"""How |D_n(x)|/n follows A(rho^2) inside each node cell.

Prints a small table for one n and then the residual against both bounds,
showing where the classical estimate is exceeded near the ends of the grid.
"""

import numpy as np

from berrut_lab.asymptotics import A, residual, residual_bound, tail_bound
from berrut_lab.barycentric import denominator
from berrut_lab.grid import decompose_array

n = 1001
xs = np.array([-0.99, -0.5, 0.0005, 1 / np.pi, 0.7, 0.999])
iota, rho, _ = decompose_array(n, xs)

print(f"n = {n}")
print(f"{'x':>10} {'iota':>6} {'rho':>9} {'|D|/n':>10} {'A(rho^2)':>10}")
for x, i, r in zip(xs, iota, rho):
    print(f"{x:10.5f} {i:6d} {r:9.5f} {abs(denominator(n, x)) / n:10.6f} {A(r * r):10.6f}")

# In the first cell the classical estimate fails for rho < 0; the tail bound holds
n = 572
print()
print(f"n = {n}, first cell")
print(f"{'rho':>6} {'residual':>10} {'classical':>10} {'tail':>10}")
for r in (-0.9, -0.5, 0.0, 0.5, 0.9):
    x = -1 + (1 + r) / n
    i, rho, _ = decompose_array(n, np.array([x]))
    res = residual(n, x)
    flag = "  exceeds classical" if res > residual_bound(n, i[0]) else ""
    print(f"{r:6.2f} {res:10.5f} {residual_bound(n, i[0]):10.5f} {tail_bound(n, i[0], rho[0]):10.5f}{flag}")
