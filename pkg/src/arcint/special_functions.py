"""Scalar kernels: complex log-gamma, modified Bessel K of complex order,
gamma-factor products, and Stirling growth exponents.

Everything downstream (Whittaker vectors, closed-form moments, conductor
slopes) reduces to these four primitives, so they are kept dependency-light:
log-gamma is a 15-term Lanczos evaluation, and K_nu(x) for complex nu is
integrated directly from

    K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt,   x > 0,

on oscillation-aware Gauss-Legendre panels.  All gamma products are assembled
in log space and exponentiated once at the end.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetExhaustedError, GammaPoleError

__all__ = [
    "AccuracyBudget",
    "KBesselResult",
    "log_gamma",
    "bessel_k",
    "bessel_k_full",
    "gamma_product_pm",
    "stirling_mod_exponent",
]

# Re(nu) beyond this is outside the documented validity window of the
# integral representation in double precision.
BESSEL_RE_ORDER_MAX = 30.0


@dataclass(frozen=True)
class AccuracyBudget:
    """Tolerances and work cap for adaptive evaluations."""

    rel_tol: float = 1e-12
    abs_tol: float = 1e-14
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not (self.rel_tol >= 1e-14):
            raise ValueError("rel_tol must be >= 1e-14")
        if not (self.abs_tol > 0):
            raise ValueError("abs_tol must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be a positive integer")


DEFAULT_BUDGET = AccuracyBudget()


def _check_finite_complex(z, name="z"):
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{name} must have finite real and imaginary parts, got {z}")
    return z


# ---------------------------------------------------------------------------
# log-gamma
# ---------------------------------------------------------------------------

# Lanczos coefficients, g = 607/128, 15 terms (Godfrey's set).  Relative
# accuracy ~1e-15 on Re z >= 1/2.
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_C = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


def _near_nonpositive_integer(z: complex, tol: float = 1e-13) -> bool:
    if z.real > 0.5:
        return False
    n = round(z.real)
    return n <= 0 and abs(z.real - n) < tol and abs(z.imag) < tol


def _log_gamma_lanczos(z: complex) -> complex:
    # valid for Re z >= 0.5
    zz = z - 1.0
    s = _LANCZOS_C[0]
    for k in range(1, len(_LANCZOS_C)):
        s += _LANCZOS_C[k] / (zz + k)
    t = zz + _LANCZOS_G + 0.5
    return _LOG_SQRT_2PI + (zz + 0.5) * cmath.log(t) - t + cmath.log(s)


def log_gamma(z) -> complex:
    """Principal branch of log Gamma(z).

    Satisfies exp(log_gamma(z)) = Gamma(z) and, away from the cut along the
    non-positive reals, log_gamma(z + 1) = log(z) + log_gamma(z) to machine
    accuracy.

    Raises GammaPoleError at (numerically) non-positive integers.
    """
    z = _check_finite_complex(z)
    if _near_nonpositive_integer(z):
        raise GammaPoleError(f"log_gamma pole at z = {z}")
    if z.real >= 0.5:
        return _log_gamma_lanczos(z)
    # Shift into the Lanczos region.  logGamma(z) = logGamma(z+1) - Log(z)
    # with principal Log is branch-exact on C minus the cut (-inf, 0], so the
    # walk preserves the principal branch for Im z != 0; on the negative real
    # axis it lands on the standard continuation from above.
    n = int(math.ceil(0.5 - z.real))
    acc = 0.0 + 0.0j
    for j in range(n):
        acc += cmath.log(z + j)
    return _log_gamma_lanczos(z + n) - acc


# ---------------------------------------------------------------------------
# modified Bessel K, complex order
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KBesselResult:
    """Value of K_nu(x) with an error estimate and a cancellation flag.

    ``subnormal`` marks results whose magnitude sits so far below the mass of
    the defining integrand that relative accuracy is unattainable in double
    precision (large |Im nu|); such values still satisfy the absolute
    tolerance.
    """

    value: complex
    abs_err: float
    subnormal: bool


_GL_NODES_CACHE: dict = {}


def _gl_rule(n: int):
    try:
        return _GL_NODES_CACHE[n]
    except KeyError:
        x, w = np.polynomial.legendre.leggauss(n)
        _GL_NODES_CACHE[n] = (x, w)
        return x, w


def _k_t_max(x_min: float, re_nu: float) -> float:
    """Truncation point: exp(-x cosh t + |Re nu| t) is ~1e-24 of its peak."""
    a = abs(re_nu)
    t_star = math.asinh(a / x_min) if a > 0 else 0.0
    log_peak = -x_min * math.cosh(t_star) + a * t_star
    target = log_peak - 55.0

    def h(t):
        return -x_min * math.cosh(t) + a * t

    lo, hi = t_star, t_star + 5.0
    while h(hi) > target:
        hi += 5.0
        if hi > t_star + 400.0:
            break
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if h(mid) > target:
            lo = mid
        else:
            hi = mid
    return hi


def _k_panels(nu: complex, x: np.ndarray, points_per_panel: int):
    """Integral and absolute-mass estimate on shared GL panels."""
    x_min = float(np.min(x))
    t_max = _k_t_max(x_min, nu.real)
    beta = abs(nu.imag)
    # keep <= ~4 oscillation periods and <= 0.5 units of t per panel
    width = min(0.5, 8.0 * math.pi / (beta + 1.0))
    n_panels = max(2, int(math.ceil(t_max / width)))
    edges = np.linspace(0.0, t_max, n_panels + 1)
    xg, wg = _gl_rule(points_per_panel)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    t = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
    w = (half[:, None] * wg[None, :]).ravel()
    # integrand on the (x, t) grid; exp underflow for large x cosh t is the
    # desired truncation behaviour
    expo = -np.outer(x, np.cosh(t))
    np.clip(expo, -745.0, None, out=expo)
    damp = np.exp(expo)
    osc = np.cosh(nu * t)
    vals = damp * osc[None, :]
    integral = vals @ w
    mass = np.abs(vals) @ w
    return integral, mass


def bessel_k(nu, x, budget: AccuracyBudget | None = None):
    """Modified Bessel function K_nu(x) for complex order nu and x > 0.

    ``x`` may be a scalar or a 1-d array (shared order).  Scalar input
    returns a complex scalar.  See ``bessel_k_full`` for error estimates and
    the cancellation flag.
    """
    res = bessel_k_full(nu, x, budget)
    return res.value


def bessel_k_full(
    nu, x, budget: AccuracyBudget | None = None, refine: bool = True
) -> KBesselResult:
    """As ``bessel_k`` but returning value, error estimate and flag.

    ``refine=False`` evaluates a single 48-point-per-panel rule without the
    coarse/fine comparison; the error field then carries a round-off bound.
    Quadrature integrands use this fast path.
    """
    budget = budget or DEFAULT_BUDGET
    nu = _check_finite_complex(nu, "nu")
    if abs(nu.real) > BESSEL_RE_ORDER_MAX:
        raise ValueError(
            f"|Re nu| = {abs(nu.real)} outside the validity window "
            f"(<= {BESSEL_RE_ORDER_MAX})"
        )
    scalar = np.isscalar(x) or getattr(x, "ndim", 0) == 0
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xa <= 0.0) or not np.all(np.isfinite(xa)):
        raise ValueError("x must be positive and finite")

    if not refine:
        val, mass = _k_panels(nu, xa, 48)
        err = 1e-15 * mass
    else:
        n_pts = 32
        val, mass = _k_panels(nu, xa, n_pts)
        refinements = max(1, int(math.log2(max(2, budget.max_subdivisions))))
        err = None
        for _ in range(refinements):
            val_f, mass_f = _k_panels(nu, xa, 2 * n_pts)
            err = np.abs(val_f - val)
            tol = np.maximum(budget.abs_tol, budget.rel_tol * np.abs(val_f))
            val, mass = val_f, mass_f
            if np.all(err <= tol):
                break
            n_pts *= 2
        else:
            raise BudgetExhaustedError(
                f"bessel_k(nu={nu}) did not converge within the budget"
            )
    # cancellation: value tiny relative to the mass the quadrature pushed around
    sub = bool(np.any(np.abs(val) < 1e-11 * mass))
    if scalar:
        return KBesselResult(complex(val[0]), float(err[0]), sub)
    return KBesselResult(val, np.asarray(err), sub)


# ---------------------------------------------------------------------------
# gamma products and Stirling exponents
# ---------------------------------------------------------------------------


def gamma_product_pm(lam, mu, nu) -> complex:
    """prod over both signs of Gamma((1 + lam +- mu +- nu) / 2).

    Evaluated as a sum of log-gammas with a single final exponential, so
    arguments of size O(m) do not overflow.  Invariant under mu -> -mu,
    nu -> -nu and under swapping mu and nu.
    """
    lam = _check_finite_complex(lam, "lam")
    mu = _check_finite_complex(mu, "mu")
    nu = _check_finite_complex(nu, "nu")
    total = 0.0 + 0.0j
    for smu in (+1, -1):
        for snu in (+1, -1):
            arg = (1.0 + lam + smu * mu + snu * nu) / 2.0
            try:
                total += log_gamma(arg)
            except GammaPoleError:
                raise GammaPoleError(
                    f"gamma_product_pm pole at sign pair ({smu:+d}, {snu:+d}): "
                    f"argument {arg}"
                ) from None
    return cmath.exp(total)


def _as_factor_lists(shifts, coeffs, side):
    shifts = [
        _check_finite_complex(s, f"{side} shift {i}") for i, s in enumerate(shifts)
    ]
    coeffs = [float(c) for c in coeffs]
    if len(shifts) != len(coeffs):
        raise ValueError(f"{side}: shifts and scale coefficients differ in length")
    if any(c == 0.0 for c in coeffs):
        raise ValueError(f"{side}: scale coefficients must be nonzero")
    return shifts, coeffs


def stirling_mod_exponent(
    numerator_shifts,
    denominator_shifts,
    numerator_coeffs=None,
    denominator_coeffs=None,
) -> float:
    """Growth exponent sigma of |prod Gamma(x_j + i c_j r)| ratios as r -> inf.

    Each factor Gamma(x_j + i c_j r) contributes |c_j r|^(Re x_j - 1/2) times
    the exponential decay exp(-pi |c_j| r / 2).  When the total exponential
    weight sum |c_j| balances between numerator and denominator, the ratio
    modulus behaves like r^sigma with

        sigma = sum_num (Re x_j - 1/2) - sum_den (Re x_j - 1/2).

    Raises ValueError when the exponential weights do not balance (the ratio
    then grows or decays exponentially and no power law exists).
    """
    if numerator_coeffs is None:
        numerator_coeffs = [1.0] * len(numerator_shifts)
    if denominator_coeffs is None:
        denominator_coeffs = [1.0] * len(denominator_shifts)
    num_s, num_c = _as_factor_lists(numerator_shifts, numerator_coeffs, "numerator")
    den_s, den_c = _as_factor_lists(
        denominator_shifts, denominator_coeffs, "denominator"
    )
    w_num = sum(abs(c) for c in num_c)
    w_den = sum(abs(c) for c in den_c)
    if abs(w_num - w_den) > 1e-12 * max(1.0, w_num, w_den):
        raise ValueError(
            "unbalanced exponential weight: "
            f"sum |c| = {w_num} (numerator) vs {w_den} (denominator); "
            "the ratio has no power-law modulus"
        )
    sigma = sum(s.real - 0.5 for s in num_s) - sum(s.real - 0.5 for s in den_s)
    return sigma


def gamma_ratio_log_abs(shifts_num, coeffs_num, shifts_den, coeffs_den, r: float):
    """log |prod_num Gamma(x_j + i c_j r) / prod_den Gamma(x_j + i c_j r)|.

    Companion to ``stirling_mod_exponent`` for empirical slope fits.
    """
    total = 0.0
    for s, c in zip(shifts_num, coeffs_num):
        total += log_gamma(complex(s) + 1j * c * r).real
    for s, c in zip(shifts_den, coeffs_den):
        total -= log_gamma(complex(s) + 1j * c * r).real
    return total
