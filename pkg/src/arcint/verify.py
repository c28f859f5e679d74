"""Named verification suites with machine-readable results.

Each check re-runs one module invariant at its contract tolerance and
reports the measured error.  These are condensed versions of the pytest
suite, runnable from the CLI as release gates; exit semantics live in the
CLI layer.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, asdict

import numpy as np

from . import integrals, lfactors, principal_series as ps, special_functions as sf
from . import su2, whittaker as wh
from .errors import DivergentIntegralError

__all__ = ["CheckResult", "run_suite", "SUITES", "TOLERANCE_PROFILES"]

TOLERANCE_PROFILES = {"default": 1.0, "strict": 0.3, "loose": 3.0}


@dataclass
class CheckResult:
    name: str
    measured: float
    tolerance: float
    passed: bool


def _check(name, measured, tol):
    return CheckResult(name=name, measured=float(measured), tolerance=float(tol), passed=bool(measured <= tol))


# ---------------------------------------------------------------------------
# special functions
# ---------------------------------------------------------------------------


def _special_checks(scale, b_convention, rng):
    out = []
    # recurrence on the strip
    worst = 0.0
    for _ in range(100):
        z = complex(rng.uniform(0.1, 10.0), rng.uniform(-50.0, 50.0))
        worst = max(worst, abs(sf.log_gamma(z + 1) - cmath.log(z) - sf.log_gamma(z)))
    out.append(_check("log_gamma_recurrence_strip", worst, 1e-12 * scale))

    # |Gamma(1+i)| against the Euler-integral oracle
    from scipy.integrate import quad

    re_part = quad(lambda t: math.exp(-t) * math.cos(math.log(t)), 0, 60, limit=200)[0]
    im_part = quad(lambda t: math.exp(-t) * math.sin(math.log(t)), 0, 60, limit=200)[0]
    ref = abs(complex(re_part, im_part))
    val = abs(cmath.exp(sf.log_gamma(1 + 1j)))
    out.append(_check("gamma_1_plus_i_euler_oracle", abs(val - ref) / ref, 1e-9 * scale))

    # bessel_k: half-integer closed form and quad oracle
    v = sf.bessel_k(0.5, 1.0)
    ref = math.sqrt(math.pi / 2.0) * math.exp(-1.0)
    out.append(_check("bessel_k_half_integer", abs(v - ref) / ref, 1e-12 * scale))
    worst = 0.0
    for _ in range(6):
        nu = complex(rng.uniform(-4, 4), rng.uniform(-5, 5))
        x = rng.uniform(1e-3, 30.0)
        val = sf.bessel_k(nu, x)
        ref = complex(
            *(
                quad(
                    lambda t, part=part: part(
                        math.exp(-x * math.cosh(t)) * cmath.cosh(nu * t)
                    ),
                    0, 40, limit=800, epsabs=0.0, epsrel=1e-13,
                )[0]
                for part in (lambda z: z.real, lambda z: z.imag)
            )
        )
        worst = max(worst, abs(val - ref) / abs(ref))
    out.append(_check("bessel_k_quad_oracle", worst, 1e-10 * scale))

    # gamma product sign invariance
    worst = 0.0
    for _ in range(10):
        lam = complex(rng.uniform(0.5, 3), rng.uniform(-2, 2))
        mu = complex(rng.uniform(-1, 1), rng.uniform(-2, 2))
        nu = complex(rng.uniform(-1, 1), rng.uniform(-2, 2))
        base = sf.gamma_product_pm(lam, mu, nu)
        for variant in (sf.gamma_product_pm(lam, -mu, nu),
                        sf.gamma_product_pm(lam, mu, -nu),
                        sf.gamma_product_pm(lam, nu, mu)):
            worst = max(worst, abs(variant - base) / abs(base))
    out.append(_check("gamma_product_sign_invariance", worst, 1e-12 * scale))

    # stirling exponent vs fitted slope
    worst = 0.0
    for _ in range(3):
        n = rng.integers(1, 4)
        coeffs = rng.uniform(0.5, 2.0, size=n)
        num = [complex(rng.uniform(0.5, 3), rng.uniform(-1, 1)) for _ in range(n)]
        den = [complex(rng.uniform(0.5, 3), rng.uniform(-1, 1)) for _ in range(n)]
        sigma = sf.stirling_mod_exponent(num, den, coeffs, coeffs)
        rs = np.geomspace(1e2, 1e4, 9)
        logs = [sf.gamma_ratio_log_abs(num, coeffs, den, coeffs, r) for r in rs]
        slope = np.polyfit(np.log(rs), logs, 1)[0]
        worst = max(worst, abs(slope - sigma))
    out.append(_check("stirling_exponent_slope_fit", worst, 0.02 * scale))
    return out


# ---------------------------------------------------------------------------
# su2
# ---------------------------------------------------------------------------


def _su2_checks(scale, b_convention, rng):
    out = []
    worst_h = worst_u = 0.0
    for m in (1, 5, 12):
        for _ in range(8):
            g1, g2 = su2.random_su2(rng), su2.random_su2(rng)
            d1, d2 = su2.rep_matrix(m, g1), su2.rep_matrix(m, g2)
            worst_h = max(worst_h, np.max(np.abs(su2.rep_matrix(m, g1 @ g2) - d1 @ d2)))
            worst_u = max(worst_u, np.max(np.abs(d1 @ d1.conj().T - np.eye(m + 1))))
    out.append(_check("rep_homomorphism", worst_h, 1e-10 * scale))
    out.append(_check("rep_unitarity", worst_u, 1e-10 * scale))

    rule = su2.euler_rule(16)
    worst = 0.0
    for m in (2, 5, 8):
        u = rng.normal(size=m + 1) + 1j * rng.normal(size=m + 1)
        v = rng.normal(size=m + 1) + 1j * rng.normal(size=m + 1)
        u2 = rng.normal(size=m + 1) + 1j * rng.normal(size=m + 1)
        v2 = rng.normal(size=m + 1) + 1j * rng.normal(size=m + 1)

        def coeff(k, a, b, m=m):
            D = su2.rep_matrix(m, k)
            return np.einsum("nij,j,i->n", D, a, np.conj(b))

        val = su2.k_quadrature(lambda k: coeff(k, u, v) * np.conj(coeff(k, u2, v2)), rule)
        expect = np.vdot(u2, u) * np.conj(np.vdot(v2, v)) / (m + 1)
        worst = max(worst, abs(val - expect))
    out.append(_check("schur_orthogonality", worst, 1e-10 * scale))

    # delta: reproducing pairings and M-equivariance
    worst = 0.0
    rule20 = su2.euler_rule(20)
    for (k, l0) in ((0, 4), (2, 4), (3, 5)):
        d = su2.truncated_delta(su2.DeltaTruncation(k, 8 if (8 - k) % 2 == 0 else 7))
        row_m = su2.weight_index(l0, -k)
        row_p = su2.weight_index(l0, k)

        def h_minus(kap):
            return su2.rep_matrix(l0, kap)[..., row_m, row_m]

        def h_plus(kap):
            return su2.rep_matrix(l0, kap)[..., row_p, row_p]

        v1 = su2.k_quadrature(lambda kap: h_minus(kap) * d(kap), rule20)
        v2 = su2.k_quadrature(lambda kap: h_plus(kap) * np.conj(d(kap)), rule20)
        worst = max(worst, abs(v1 - 1.0), abs(v2 - 1.0))
        kap0 = su2.random_su2(rng)
        th = 0.37
        base = d(kap0)
        phase = cmath.exp(1j * k * th)
        worst = max(
            worst,
            abs(d(su2.torus_element(th) @ kap0) - phase * base),
            abs(d(kap0 @ su2.torus_element(th)) - phase * base),
        )
    out.append(_check("delta_reproducing_and_equivariance", worst, 1e-10 * scale))

    # embedding norm
    m = 6
    u = rng.normal(size=m + 1) + 1j * rng.normal(size=m + 1)
    u = u / np.linalg.norm(u)
    f = su2.ktype_embed(m, u)
    val = su2.k_quadrature(lambda k: np.abs(f(k)) ** 2, rule)
    out.append(_check("ktype_embed_norm", abs(val - 1.0), 1e-10 * scale))
    return out


# ---------------------------------------------------------------------------
# principal series
# ---------------------------------------------------------------------------


def _random_bounded_sl2(rng, norm_cap: float) -> np.ndarray:
    """Random SL(2, C) element with operator norm <= norm_cap (Cartan form)."""
    t = rng.uniform(0.0, 2.0 * math.log(norm_cap))
    a = np.diag([math.exp(t / 2.0), math.exp(-t / 2.0)]).astype(complex)
    return su2.random_su2(rng) @ a @ su2.random_su2(rng)


def _principal_checks(scale, b_convention, rng):
    out = []
    worst = 0.0
    for _ in range(50):
        g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        g = g / np.sqrt(np.linalg.det(g))
        fac = ps.iwasawa(g)
        worst = max(worst, np.max(np.abs(fac.reconstruct() - g)))
    out.append(_check("iwasawa_reconstruction", worst, 1e-10 * scale))

    p = ps.UnitaryParam(2, 1.3)
    f = ps.ModelFunction(weight=2, coeffs={(2, 0): 0.6 + 0.1j, (4, 2): 0.8 - 0.2j})
    worst = 0.0
    for _ in range(6):
        g = _random_bounded_sl2(rng, 5.0)
        res = ps.induced_action(p, f, g)
        worst = max(worst, abs(res.norm_sq() + res.tail_mass - f.norm_sq()))
    out.append(_check("induced_action_unitarity", worst, 1e-8 * scale))

    worst = 0.0
    for (k, r) in ((0, 1.0), (2, 1.5), (4, 0.7)):
        pp = ps.UnitaryParam(k, r)
        ff = ps.ModelFunction.basis(k, max(abs(k), 2) if k == 0 else k, 0 if k == 0 else k - 2)
        kap = su2.random_su2(rng)
        while abs(ff(kap)) < 0.05:
            kap = su2.random_su2(rng)
        val = ps.casimir_apply_fd(pp, ff, kap, h=0.05)
        target = 4.0 * ps.casimir_eigenvalue(pp) * ff(kap)
        worst = max(worst, abs(val - target) / abs(target))
    out.append(_check("casimir_fd_eigenvalue", worst, 1e-3 * scale))

    # spherical coefficient: general quadrature path vs radial reduction
    v0 = ps.ModelFunction.spherical()
    p0 = ps.UnitaryParam(0, 1.0)
    rule = su2.euler_rule(28)
    worst = 0.0
    for t in (0.4, 1.1):
        gt = np.diag([math.exp(t / 2), math.exp(-t / 2)]).astype(complex)
        k1, k2 = su2.random_su2(rng), su2.random_su2(rng)
        mc = ps.matrix_coefficient(p0, v0, v0, k1 @ gt @ k2, rule)
        worst = max(worst, abs(mc - ps.spherical_coefficient_radial(1.0, t)))
        worst = max(worst, abs(mc.imag))
    out.append(_check("spherical_coefficient_vs_radial", worst, 1e-8 * scale))
    return out


# ---------------------------------------------------------------------------
# whittaker
# ---------------------------------------------------------------------------


def _whittaker_checks(scale, b_convention, rng):
    out = []
    bad = 0
    for m in range(0, 11):
        for k in range(m % 2, m + 1, 2):
            for w in range(-m, m + 1, 2):
                brute = {
                    (pq, q)
                    for pq in range(0, m + 1)
                    for q in range(0, m + 1)
                    if 2 * pq >= w - k and 2 * q >= -w - k and 2 * (pq + q) <= m - k
                }
                if set(wh.index_set(k, m, w)) != brute:
                    bad += 1
    out.append(_check("index_set_brute_force", bad, 0))

    # pinned closed forms pointwise
    ys = np.array([0.05, 0.3, 1.2, 4.0])
    spec = wh.WhittakerSpec.pinned(2, 6, 0.8)
    v = wh.whittaker_V(spec, 6, ys)
    ref = ys ** (6 / 2 + 1) * np.asarray(sf.bessel_k(-1 - 0.8j, 4 * math.pi * ys))
    worst = float(np.max(np.abs(v - ref) / np.abs(ref)))
    spec2 = wh.WhittakerSpec.pinned(3, 3, 1.1)
    v2 = wh.whittaker_V(spec2, 1, ys)
    ref2 = (
        math.sqrt(math.comb(3, 1))
        * ys ** (3 / 2 + 1)
        * np.asarray(sf.bessel_k(-1j * 1.1 - 0.5, 4 * math.pi * ys))
    )
    worst = max(worst, float(np.max(np.abs(v2 - ref2) / np.abs(ref2))))
    out.append(_check("pinned_component_closed_forms", worst, 1e-12 * scale))

    # K-order bookkeeping
    bad = 0
    for (k, m) in ((0, 4), (2, 6), (1, 5)):
        spec = wh.WhittakerSpec.pinned(k, m, 0.9)
        for w in range(-m, m + 1, 2):
            for t in wh.whittaker_terms(spec, w):
                if t.order != -1j * 0.9 + t.p - t.q - w / 2.0:
                    bad += 1
    out.append(_check("bessel_order_bookkeeping", bad, 0))

    worst = 0.0
    for m in range(0, 9):
        for k in range(m % 2, m + 1, 2):
            for r in (0.5, 2.0, 10.0):
                val = wh.unitary_constant(k, m, r) ** 2 * wh.whittaker_norm_sq(k, m, r)
                worst = max(worst, abs(val * 32 * math.pi**2 - 1.0))
    out.append(_check("normalization_invariant_32pi2", worst, 1e-10 * scale))

    worst = 0.0
    for (k, m, r) in ((0, 0, 0.5), (2, 2, 2.0), (0, 4, 10.0), (3, 5, 2.0)):
        cf = wh.whittaker_norm_sq(k, m, r)
        q = wh.whittaker_norm_sq_quad(k, m, r)
        worst = max(worst, abs(q.value.real - cf) / cf)
    out.append(_check("norm_closed_vs_quadrature", worst, 1e-7 * scale))
    return out


# ---------------------------------------------------------------------------
# integrals
# ---------------------------------------------------------------------------


def _integrals_checks(scale, b_convention, rng):
    out = []
    worst = 0.0
    for _ in range(10):
        lam = complex(rng.uniform(1, 4), rng.uniform(-1, 1))
        mu = complex(rng.uniform(-0.5, 0.5), rng.uniform(-1.5, 1.5))
        nu = complex(rng.uniform(-0.5, 0.5), rng.uniform(-1.5, 1.5))
        pp = integrals.BesselMomentParams(lam, mu, nu)
        cf = integrals.bessel_moment(pp)
        qq = integrals.bessel_moment_quad(pp)
        worst = max(worst, abs(cf - qq.value) / abs(cf))
    out.append(_check("bessel_moment_vs_quadrature", worst, 1e-8 * scale))

    worst = 0.0
    for _ in range(8):
        a = rng.uniform(2, 4)
        b = rng.uniform(-0.5, 0.5)
        c = complex(rng.uniform(-0.5, 0.5), rng.uniform(-2, 2))
        r = rng.uniform(0, 3)
        s = a + 1j * r
        lhs = integrals.triple_term(a, b, c, r)
        rhs = (4 * math.pi) ** (-s) * integrals.bessel_moment(
            integrals.BesselMomentParams(s - 1, b + 1j * r, c)
        )
        worst = max(worst, abs(lhs - rhs) / abs(lhs))
    out.append(_check("triple_term_substitution_identity", worst, 1e-10 * scale))

    # the b-convention arbiter: closed term sum vs defining integral
    cases = [
        integrals.LocalIntegralSpec(
            wh.WhittakerSpec.pinned(0, 0, 0.8), 0,
            wh.WhittakerSpec.pinned(0, 0, 1.1), 0, 0, induced_r=1.3,
        ),
        integrals.LocalIntegralSpec(
            wh.WhittakerSpec.pinned(2, 2, 1.7), -2,
            wh.WhittakerSpec.pinned(0, 0, 0.9), 0, 2,
        ),
        integrals.LocalIntegralSpec(
            wh.WhittakerSpec.pinned(1, 3, 1.0), 3,
            wh.WhittakerSpec.pinned(0, 2, 0.7), 2, -1,
        ),
    ]
    worst = 0.0
    for s in cases:
        tq = integrals.local_integral_T_quad(s)
        try:
            tv = integrals.local_integral_T(s, b_convention=b_convention)
            worst = max(worst, abs(tv - tq.value) / abs(tq.value))
        except DivergentIntegralError:
            worst = math.inf
    out.append(_check("term_sum_vs_defining_quadrature", worst, 1e-7 * scale))

    # selection rule: structural zero and the K-integral behind it
    s_bad = integrals.LocalIntegralSpec(
        wh.WhittakerSpec.pinned(0, 0, 0.8), 0,
        wh.WhittakerSpec.pinned(0, 2, 1.1), 2, 0,
    )
    worst = abs(integrals.local_integral_T(s_bad))
    val_ok = integrals.selection_rule_integral(2, -2, -2, 2, 0, 0, 2, 6)
    val_no = integrals.selection_rule_integral(2, 2, 2, 2, 0, 0, 2, 6)
    worst = max(worst, abs(val_ok - 1.0), abs(val_no))
    out.append(_check("selection_rule", worst, 1e-9 * scale))

    # exponent classification, brute force
    bad = 0
    for m in range(0, 11):
        for k in range(m % 2, m + 1, 2):
            for w1 in range(-m, m + 1, 2):
                rep = integrals.exponent_report(k, m, w1)
                sig = [p - q - w1 / 2 - m / 2 - 1 for (p, q) in wh.index_set(k, m, w1)]
                if abs(rep.max_sigma - max(sig)) > 0:
                    bad += 1
                if rep.max_sigma > -1.0:
                    bad += 1
                if rep.extremal != (w1 == -k):
                    bad += 1
                if rep.extremal and rep.argmax != (((m - k) // 2, 0),):
                    bad += 1
    out.append(_check("exponent_equality_classification", bad, 0))

    # sigma asymptotics, closed path
    rs = [32.0 * 2**j for j in range(6)]
    try:
        vals = []
        for r in rs:
            s = integrals.LocalIntegralSpec(
                wh.WhittakerSpec.pinned(2, 2, r), -2,
                wh.WhittakerSpec.pinned(0, 0, 1.3), 0, 2,
            )
            vals.append(abs(integrals.local_integral_T(s, b_convention=b_convention)))
        slope = float(np.polyfit(np.log(rs), np.log(vals), 1)[0])
        measured = abs(slope + 1.0)
    except DivergentIntegralError:
        measured = math.inf
    out.append(_check("extremal_decay_slope", measured, 0.05 * scale))

    worst = 0.0
    for k in range(0, 13, 2):
        for rp in (0.5, 1.0, 3.7, 10.0):
            t1 = integrals.weight_T1(k, rp)
            t2 = abs(integrals.weight_T2(k, rp))
            worst = max(worst, abs(t2 - t1) / t1)
    out.append(_check("weight_aspect_t2_equals_t1", worst, 1e-8 * scale))

    worst = 0.0
    for (k, rp) in ((0, 1.0), (4, 2.3)):
        q1 = integrals.weight_T1_quad(k, rp)
        worst = max(
            worst,
            abs(q1.value / integrals.WEIGHT_ASPECT_CALIBRATION - integrals.weight_T1(k, rp))
            / integrals.weight_T1(k, rp),
        )
        q2 = integrals.weight_T2_quad(k, rp)
        worst = max(
            worst,
            abs(q2.value / integrals.WEIGHT_ASPECT_CALIBRATION - integrals.weight_T2(k, rp))
            / abs(integrals.weight_T2(k, rp)),
        )
    out.append(_check("weight_aspect_vs_quadrature", worst, 1e-6 * scale))

    ratios = [integrals.mv_check(*rs).ratio for rs in ((0.8, 1.1, 1.3), (0.6, 1.4, 0.9), (2.0, 0.3, 1.7))]
    spread = (max(ratios) - min(ratios)) / abs(np.mean(ratios))
    out.append(_check("mv_ratio_constancy", spread, 0.05 * scale))
    return out


# ---------------------------------------------------------------------------
# lfactors
# ---------------------------------------------------------------------------


def _lfactors_checks(scale, b_convention, rng):
    out = []
    bad = 0
    from collections import Counter

    g = lfactors.triple_gamma_cuspidal(2, 4, 1.3, 0.7)
    if len(g.shifts) != 8:
        bad += 1
    if Counter(g.shifts) != Counter(lfactors.triple_gamma_cuspidal(2, 4, -1.3, 0.7).shifts):
        bad += 1
    ge = lfactors.triple_gamma_eisenstein(2, 4, 1.3, 0.8)
    if len(ge.shifts) != 4:
        bad += 1
    if Counter(ge.shifts) != Counter(lfactors.triple_gamma_eisenstein(2, 4, -1.3, 0.8).shifts):
        bad += 1
    out.append(_check("shift_counts_and_symmetry", bad, 0))

    slopes_c = [
        lfactors.analytic_conductor(lfactors.triple_gamma_cuspidal(2, 4, rn, 1.7), 0.5).slope
        for rn in (1e2, 1e3, 1e4)
    ]
    slopes_e = [
        lfactors.analytic_conductor(lfactors.triple_gamma_eisenstein(2, 4, rn, 0.8), 0.5).slope
        for rn in (1e2, 1e3, 1e4)
    ]
    mono = 0 if (sorted(slopes_c) == slopes_c and sorted(slopes_e) == slopes_e) else 1
    out.append(_check("slope_monotone_convergence", mono, 0))
    out.append(_check("cuspidal_slope_at_1e4", abs(slopes_c[-1] - 8.0), 0.05 * scale))
    out.append(_check("eisenstein_slope_at_1e4", abs(slopes_e[-1] - 4.0), 0.05 * scale))
    return out


SUITES = {
    "special": _special_checks,
    "su2": _su2_checks,
    "principal": _principal_checks,
    "whittaker": _whittaker_checks,
    "integrals": _integrals_checks,
    "lfactors": _lfactors_checks,
}


def run_suite(
    suite: str,
    tol_profile: str = "default",
    b_convention: str = "half_weight",
    seed: int = 0,
) -> dict:
    """Run one suite (or ``all``); returns the JSON-ready report."""
    if tol_profile not in TOLERANCE_PROFILES:
        raise KeyError(f"unknown tolerance profile {tol_profile!r}")
    if suite == "all":
        names = list(SUITES)
    elif suite in SUITES:
        names = [suite]
    else:
        raise KeyError(f"unknown suite {suite!r}")
    scale = TOLERANCE_PROFILES[tol_profile]
    checks = []
    for name in names:
        rng = np.random.default_rng(seed)
        checks.extend(SUITES[name](scale, b_convention, rng))
    return {
        "suite": suite,
        "tolerance_profile": tol_profile,
        "b_convention": b_convention,
        "checks": [asdict(c) for c in checks],
        "passed": all(c.passed for c in checks),
    }
