"""The sawtooth family f_m: the error numerator at 1/m grows like a harmonic sum.

The direct sum matches the odd harmonic sum to rounding, and log(m)/4 + delta_m/2
stays a fixed distance below it.
"""

from berrut_lab.counterexample import SawtoothParams, main_term_identity, support_disjointness, tower

print(f"{'m':>7} {'direct N':>12} {'harmonic':>12} {'log(m)/4 + d/2':>15}")
for m in (64, 256, 1024, 4096, 16384, 65536):
    t = main_term_identity(SawtoothParams(m))
    print(f"{m:7d} {t.direct:12.8f} {t.harmonic:12.8f} {t.formula:15.8f}")

print("tower sizes:", [tower(j) for j in range(1, 5)])
print("supports pairwise disjoint through j = 5:", support_disjointness(5))
