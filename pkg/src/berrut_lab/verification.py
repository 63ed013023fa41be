"""Self-checks behind ``berrut-lab verify``.

Every section runs a family of numerical checks and reports one row per
check: a name, the measured value, the bound it is compared against and
whether it passed.  Sections are deterministic given the seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .asymptotics import A, A_inverse, HALF_PI, H_AT_ZERO, residual_bound, tail_bound
from .barycentric import BERRUT, ENDPOINT_HALVED, SampledFunction, denominator, evaluate
from .counterexample import (SawtoothParams, f_m, hat_sums, header_decomposition,
                             main_term_identity, node_value_law, shifted_harmonic_bound,
                             support_disjointness, uk_positivity, vanishing_claims)
from .error_analysis import (bias_norms, bv_bound_rhs, convergence_record, decomposition_check,
                             delta, delta_sup)
from .grid import Parity, RationalPoint, UniformGrid, decompose_array, decompose_rational, is_node, nodes
from .limits import denominator_limit_set
from .models import LIBRARY, bv1_models


@dataclass
class Check:
    name: str
    value: float
    bound: float
    passed: bool


@dataclass
class SectionResult:
    key: str
    title: str
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def add(self, name, value, bound, passed):
        self.checks.append(Check(name, float(value), float(bound), bool(passed)))


@dataclass(frozen=True)
class VerifyOptions:
    samples: int = 1000
    m_values: tuple = (256, 4096, 65536)
    seed: int = 0


def _primes(limit: int) -> list[int]:
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return [int(p) for p in np.flatnonzero(sieve)]


def _random_regular(rng, n_lo, n_hi, count):
    """``count`` pairs (n, x) with x uniform in (-1, 1) and not a node of n."""
    out = []
    while len(out) < count:
        n = int(rng.integers(n_lo, n_hi + 1))
        x = float(rng.uniform(-1.0, 1.0))
        if -1.0 < x < 1.0 and not is_node(n, x):
            out.append((n, x))
    return out


def section_exactness(opts: VerifyOptions) -> SectionResult:
    res = SectionResult("exactness", "interpolation at the nodes and reproduction of constants")
    worst_nodes = 0
    for n in range(1, 201):
        xs = nodes(n)
        samples = SampledFunction(UniformGrid(n), np.cos(3.0 * xs))
        for w in (BERRUT, ENDPOINT_HALVED):
            worst_nodes += int(np.count_nonzero(evaluate(samples, w, xs) != samples.values))
    res.add("node mismatches, n in 1..200", worst_nodes, 0, worst_nodes == 0)
    rng = np.random.default_rng(opts.seed)
    worst = 0.0
    for n in (1, 2, 7, 100, 1001, 10000):
        xs = rng.uniform(-1.0, 1.0, 200)
        samples = SampledFunction(UniformGrid(n), np.full(n + 1, 1.0))
        for w in (BERRUT, ENDPOINT_HALVED):
            worst = max(worst, float(np.max(np.abs(evaluate(samples, w, xs) - 1.0))))
    res.add("constant reproduction error", worst, 1e-13, worst <= 1e-13)
    return res


def section_series(opts: VerifyOptions) -> SectionResult:
    res = SectionResult("series-A", "A(0) = pi/2, monotonicity, bounds and inverse of A")
    res.add("|A(0) - pi/2|", abs(A(0.0) - HALF_PI), 1e-10, abs(A(0.0) - HALF_PI) <= 1e-10)
    grid = np.linspace(0.0, 1.0 - 1e-6, 1000)
    vals = A(grid)
    steps = np.diff(vals)
    res.add("min increment on grid", steps.min(), 0.0, bool(np.all(steps > 0)))
    gap = vals - 2.0 / (1.0 - grid)
    res.add("min A - 2/(1-x)", gap.min(), -0.5, gap.min() >= -0.5)
    res.add("max A - 2/(1-x)", gap.max(), H_AT_ZERO, gap.max() <= H_AT_ZERO + 1e-15)
    rng = np.random.default_rng(opts.seed)
    xs = rng.uniform(0.0, 1.0, 100)
    err = max(abs(A_inverse(A(float(x))) - x) for x in xs)
    res.add("round trip |A_inverse(A(x)) - x|", err, 1e-9, err <= 1e-9)
    return res


def section_denominator(opts: VerifyOptions) -> SectionResult:
    res = SectionResult("denominator", "sign, size and residual of D_n(x)/n")
    rng = np.random.default_rng(opts.seed)
    pairs = _random_regular(rng, 10, 5000, opts.samples)
    sign_bad, min_ratio, ratios, classical = 0, math.inf, [], []
    for n, x in pairs:
        d = float(denominator(n, x))
        iota, rho, _ = decompose_array(n, np.array([x]))
        iota, rho = int(iota[0]), float(rho[0])
        sign_bad += int(np.sign(d) != (-1) ** iota)
        min_ratio = min(min_ratio, abs(d) / n)
        r = abs(abs(d) / n - A(rho * rho))
        ratios.append(r / (tail_bound(n, iota, rho) + 1e-9))
        classical.append(r / (residual_bound(n, iota) + 1e-9))
    ratios, classical = np.array(ratios), np.array(classical)
    res.add("sign mismatches", sign_bad, 0, sign_bad == 0)
    res.add("min |D_n/n|", min_ratio, 1 - 1e-12, min_ratio >= 1 - 1e-12)
    res.add("max residual / first-term tail bound", ratios.max(), 1.0, ratios.max() <= 1.0)
    q = np.quantile(ratios, [0.5, 0.9, 0.99])
    res.notes.append(f"residual/tail bound over {len(pairs)} samples: "
                     f"median {q[0]:.3g}, p90 {q[1]:.3g}, p99 {q[2]:.3g}, max {ratios.max():.3g}")
    over = int(np.count_nonzero(classical > 1.0))
    res.notes.append(f"1/(4(1+iota)) + 1/(4(n-iota)) exceeded in {over} of {len(pairs)} samples "
                     f"(max ratio {classical.max():.4g})")
    return res


def section_denominator_limits(opts: VerifyOptions) -> SectionResult:
    """Along odd and even n, D_n(x)/n sits next to a predicted limit and
    rho_n(x)^2 next to A_inverse(|D_n(x)/n|)."""
    res = SectionResult("denominator-limits", "D_n(x)/n against its limit sets at x = 0 and x = -2/3")
    for label, point in (("x=0", RationalPoint(1, 1)), ("x=-2/3", RationalPoint(1, 3))):
        x = float(point.x)
        for parity in (Parity.ODD, Parity.EVEN):
            limits = denominator_limit_set(point, parity)
            dist, sign_bad, rho_err = 0.0, 0, 0.0
            for n in range(20001 if parity is Parity.ODD else 20000, 20401, 2):
                if point.is_node(n):
                    continue
                d = float(denominator(n, x)) / n
                dec = decompose_rational(n, point)
                dist = max(dist, limits.distance(d))
                sign_bad += int(np.sign(d) != (-1) ** dec.iota)
                rho_err = max(rho_err, abs(A_inverse(max(abs(d), HALF_PI)) - float(dec.rho) ** 2))
            tag = f"{label} {parity.name.lower()}"
            res.add(f"{tag}: distance to limit set", dist, 1e-3, dist <= 1e-3)
            res.add(f"{tag}: sign mismatches", sign_bad, 0, sign_bad == 0)
            res.add(f"{tag}: |A_inverse(|D/n|) - rho^2|", rho_err, 1e-3, rho_err <= 1e-3)
    return res


def _limit_brute_force(point: RationalPoint, parity: Parity) -> set:
    """(sign, rho^2) pairs visited by n over one full period of the pattern."""
    out = set()
    period = 8 * point.den
    start = 1 if parity is Parity.ODD else 2
    for n in range(start, start + 2 * period, 2):
        if point.is_node(n):
            continue
        dec = decompose_rational(n, point)
        out.add(((-1) ** dec.iota, dec.rho ** 2))
    return out


def section_limit_sets(opts: VerifyOptions) -> SectionResult:
    res = SectionResult("limit-sets", "finite limit sets of D_n/n against enumeration over a period")
    mismatches, total = 0, 0
    for b in range(1, 25):
        for a in range(1, 2 * b):
            if math.gcd(a, b) != 1:
                continue
            point = RationalPoint(a, b)
            for parity in (Parity.ODD, Parity.EVEN):
                predicted = denominator_limit_set(point, parity)
                expected = sorted({s * float(A(float(r))) for s, r in _limit_brute_force(point, parity)})
                total += 1
                if len(expected) != len(predicted) or any(
                        abs(u - v) > 1e-9 * max(1.0, abs(v)) for u, v in zip(expected, predicted.values)):
                    mismatches += 1
    res.add(f"mismatching sets out of {total}", mismatches, 0, mismatches == 0)
    return res


def section_decomposition(opts: VerifyOptions) -> SectionResult:
    res = SectionResult("decomposition", "B_n f - f = (Delta_n + bias)/D_n at random regular points")
    rng = np.random.default_rng(opts.seed + 1)
    models = list(LIBRARY.values())
    worst = 0.0
    for n, x in _random_regular(rng, 1, 2000, opts.samples):
        model = models[int(rng.integers(len(models)))]
        r = decomposition_check(model, n, x)
        b = abs(float(evaluate(SampledFunction.from_function(model.f, n), BERRUT, x)))
        worst = max(worst, r / (1.0 + b))
    res.add("max relative residual", worst, 1e-10, worst <= 1e-10)
    return res


ROUNDOFF_FLOOR = 1e-10


def _bv_primes():
    return _primes(2000)


def section_numerator_bv(opts: VerifyOptions) -> SectionResult:
    res = SectionResult("numerator-bv", "|Delta_n| <= TV(f')/2 for BV1 models")
    for model in bv1_models():
        worst = max(delta_sup(model, n) for n in _bv_primes())
        bound = model.tv_fprime / 2.0 + 1e-9
        res.add(f"{model.name}: max |Delta_n|", worst, bound, worst <= bound)
    return res


def section_delta_decay(opts: VerifyOptions) -> SectionResult:
    res = SectionResult("delta-decay", "sup |Delta_n| at n = 3200 is at most half of n = 100")
    for model in LIBRARY.values():
        if not model.is_ac1:
            continue
        a, b = delta_sup(model, 100, 1000), delta_sup(model, 3200, 1000)
        if a <= ROUNDOFF_FLOOR:
            # Delta_n vanishes identically for this model and even n
            res.add(f"{model.name}: sup at 3200 (roundoff only)", b, ROUNDOFF_FLOOR, b <= ROUNDOFF_FLOOR)
        else:
            res.add(f"{model.name}: ratio sup(3200)/sup(100)", b / a, 0.5, b <= 0.5 * a)
    return res


def section_bv_bound(opts: VerifyOptions) -> SectionResult:
    res = SectionResult("bv-bound", "n sup|B_n f - f| <= TV(f')/2 + max(|O|, |E|)")
    for model in bv1_models():
        rhs = bv_bound_rhs(model)
        worst = max(convergence_record(model, n).scaled_err for n in _bv_primes())
        res.add(f"{model.name}: max n sup_err", worst, rhs + 1e-6, worst <= rhs + 1e-6)
        odd, even = bias_norms(model)
        fp = float(np.max(np.abs(model.f_prime(np.linspace(-1, 1, 2001)))))
        ok = max(odd, even) <= fp + 1e-9
        res.add(f"{model.name}: max(|O|, |E|) <= |f'|", max(odd, even), fp, ok)
    return res


def section_harmonic(opts: VerifyOptions) -> SectionResult:
    res = SectionResult("harmonic", "shifted harmonic sums against their logarithmic lower bound")
    for a in (0.5, 1.0, 3.7):
        worst = min(s - lb for s, lb in (shifted_harmonic_bound(a, l) for l in range(1, 1001)))
        res.add(f"a={a}: min sum - lower bound", worst, -1e-12, worst >= -1e-12)
    return res


def section_hat_sums(opts: VerifyOptions) -> SectionResult:
    res = SectionResult("hat-sums", "raise and fall sums of the sawtooth against closed forms")
    for q, m in ((16, 256), (16, 4096)):
        h = SawtoothParams(m).hats
        rel = 0.0
        min_h = math.inf
        for p in range(h + 1):
            s = hat_sums(q, m, p)
            rel = max(rel, abs(s.F_p - s.closed_F_p) / abs(s.closed_F_p))
            if p >= 1:
                rel = max(rel, abs(s.R_p - s.closed_R_p) / abs(s.closed_R_p))
                min_h = min(min_h, s.H_p)
            else:
                f0_bound = -3.0 / (16 * q * m)
                res.add(f"q={q} m={m}: F_0", s.F_p, f0_bound, s.F_p >= f0_bound)
        res.add(f"q={q} m={m}: max relative closed-form gap", rel, 1e-12, rel <= 1e-12)
        res.add(f"q={q} m={m}: min H_p", min_h, 0.0, min_h > 0.0)
        dec = header_decomposition(q, m)
        gap = abs(dec.numerator - dec.assembled)
        res.add(f"q={q} m={m}: |N - 4qm(R_- + F_0 + sum H_p + R_+)|", gap, 1e-10, gap <= 1e-10)
        res.add(f"q={q} m={m}: R_- and R_+ positive", min(dec.R_minus, dec.R_plus), 0.0,
                min(dec.R_minus, dec.R_plus) > 0)
        res.add(f"q={q} m={m}: N_n(f_m, 1/n)", dec.numerator, -0.75, dec.numerator >= -0.75)
    return res


def section_main_term(opts: VerifyOptions) -> SectionResult:
    res = SectionResult("main-term", "N_m(f_m, 1/m) against the odd harmonic sum and its log bound")
    for m in opts.m_values:
        t = main_term_identity(SawtoothParams(m))
        gap = abs(t.direct - t.harmonic)
        res.add(f"m={m}: |N - sum 1/(2i-1)|", gap, 1e-10, gap <= 1e-10)
        res.add(f"m={m}: N - (log(m)/4 + delta_m/2)", t.direct - t.formula, 0.0, t.direct >= t.formula)
        res.notes.append(f"m={m}: N = {t.direct:.12g}, log(m)/4 + delta_m/2 = {t.formula:.12g}; "
                         "the closed form is a lower bound, not an equality")
    return res


def section_uk(opts: VerifyOptions) -> SectionResult:
    res = SectionResult("uk", "u_k from its product form against the expanded polynomial")
    rng = np.random.default_rng(opts.seed + 2)
    worst, smallest = 0.0, math.inf
    for _ in range(1000):
        q = int(rng.integers(16, 1001))
        p = int(rng.integers(1, 1001))
        xi = float(rng.uniform(0.0, 2.0))
        d, e = uk_positivity(q, p, xi)
        worst = max(worst, abs(d - e) / abs(e))
        smallest = min(smallest, d, e)
    res.add("max relative difference", worst, 1e-10, worst <= 1e-10)
    res.add("min u_k", smallest, 0.0, smallest > 0)
    return res


def section_support(opts: VerifyOptions) -> SectionResult:
    res = SectionResult("support", "disjoint supports and vanishing of the sawtooth tower")
    res.add("supports disjoint through j = 5", float(support_disjointness(5)), 1.0, support_disjointness(5))
    claims = vanishing_claims(5)
    bad = sum(1 for *_, ok in claims if not ok)
    res.add(f"vanishing claims failing out of {len(claims)}", bad, 0, bad == 0)
    for m in (256, 4096):
        params = SawtoothParams(m)
        bad = sum(1 for k in range(m + 1)
                  if f_m(params, Fraction(2 * k, m) - 1) != node_value_law(params, k))
        res.add(f"m={m}: node-value law mismatches", bad, 0, bad == 0)
    return res


SECTIONS: dict[str, Callable[[VerifyOptions], SectionResult]] = {
    "exactness": section_exactness,
    "series-A": section_series,
    "denominator": section_denominator,
    "denominator-limits": section_denominator_limits,
    "limit-sets": section_limit_sets,
    "decomposition": section_decomposition,
    "numerator-bv": section_numerator_bv,
    "delta-decay": section_delta_decay,
    "bv-bound": section_bv_bound,
    "harmonic": section_harmonic,
    "hat-sums": section_hat_sums,
    "main-term": section_main_term,
    "uk": section_uk,
    "support": section_support,
}

# Short names accepted by ``--only`` next to the descriptive section keys.
ALIASES = {
    "lemA": "series-A",
    "lemDen": "denominator",
    "corConv-empirical": "denominator-limits",
    "diffN": "decomposition",
    "corNumBV": "numerator-bv",
    "thm2-decay": "delta-decay",
    "thmUnifBV": "bv-bound",
    "lemHarmo": "harmonic",
    "boundUj": "hat-sums",
    "boundDj": "hat-sums",
    "mainR2": "main-term",
    "u_k": "uk",
}


def resolve(keys) -> list[str]:
    out = []
    for key in keys:
        name = ALIASES.get(key, key)
        if name not in SECTIONS:
            raise KeyError(key)
        if name not in out:
            out.append(name)
    return out


def run_sections(keys=None, opts: VerifyOptions = VerifyOptions()) -> list[SectionResult]:
    names = list(SECTIONS) if not keys else resolve(keys)
    return [SECTIONS[name](opts) for name in names]
