"""Compiled inner loops.

All sums over the n + 1 nodes go through Neumaier's compensated
accumulation, so the rounding error of a sum is O(eps) relative to the
sum itself plus O(n eps^2) relative to the sum of magnitudes.
"""

import numpy as np
from numba import njit

# A probe closer than this to a node is treated as the node: 1/(x - x_k)
# would overflow and the interpolant equals the sample to full precision.
NODE_EPS = 1e-300


@njit(cache=True, nogil=True)
def neumaier_sum(terms):
    s = 0.0
    c = 0.0
    for t in terms:
        u = s + t
        if abs(s) >= abs(t):
            c += (s - u) + t
        else:
            c += (t - u) + s
        s = u
    return s + c


@njit(cache=True, nogil=True)
def cauchy_sums(xs, shifts, nodes, weights, values):
    """sum_k w_k (values_k - shifts_j) / (xs_j - nodes_k) for every j.

    A probe that coincides with a node (within NODE_EPS) yields nan;
    callers decide what that means.
    """
    out = np.empty(xs.shape[0])
    for j in range(xs.shape[0]):
        x = xs[j]
        shift = shifts[j]
        s = 0.0
        c = 0.0
        hit = False
        for k in range(nodes.shape[0]):
            d = x - nodes[k]
            if abs(d) < NODE_EPS:
                hit = True
                break
            t = weights[k] * (values[k] - shift) / d
            u = s + t
            if abs(s) >= abs(t):
                c += (s - u) + t
            else:
                c += (t - u) + s
            s = u
        out[j] = np.nan if hit else s + c
    return out


@njit(cache=True, nogil=True)
def numerator_denominator(xs, nodes, weights, values):
    """Both barycentric sums in one sweep; nan at nodes (within NODE_EPS)."""
    num = np.empty(xs.shape[0])
    den = np.empty(xs.shape[0])
    for j in range(xs.shape[0]):
        x = xs[j]
        sn = 0.0
        cn = 0.0
        sd = 0.0
        cd = 0.0
        hit = False
        for k in range(nodes.shape[0]):
            d = x - nodes[k]
            if abs(d) < NODE_EPS:
                hit = True
                break
            td = weights[k] / d
            tn = td * values[k]
            u = sn + tn
            if abs(sn) >= abs(tn):
                cn += (sn - u) + tn
            else:
                cn += (tn - u) + sn
            sn = u
            u = sd + td
            if abs(sd) >= abs(td):
                cd += (sd - u) + td
            else:
                cd += (td - u) + sd
            sd = u
        if hit:
            num[j] = np.nan
            den[j] = np.nan
        else:
            num[j] = sn + cn
            den[j] = sd + cd
    return num, den
