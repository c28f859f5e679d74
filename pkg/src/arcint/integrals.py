"""Closed-form Bessel moments, the local triple-product integrals, their
growth exponents, and the weight-aspect pair.

Every closed form here carries an independent quadrature companion.  Closed
paths are assembled from log-gamma sums and exponentiated once, so they stay
finite for spectral parameters up to 1e4 where the individual gamma factors
under/overflow by thousands of orders.

Conventions for the local integral T (eigenvalue aspect): the first
Whittaker vector and the induced vector share the spectral parameter r of
the first representation unless ``induced_r`` is set; the per-term triple is

    a = 1 + (k + k')/2 + p + q + p' + q',
    b = p - q - w1/2,
    c = -i r' + p' - q' - w2/2,

with half-weights in b and c.  (The source display for b and c omits the
halving, but its own Bessel orders and equality-case arithmetic require it;
the quadrature cross-check rejects the unhalved variant, which stays
available as b_convention="paper_literal" for exactly that test.)
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DivergentIntegralError, UnpinnedCoefficientError
from .quadrature import QuadratureResult, integrate_semi_infinite
from .special_functions import AccuracyBudget, log_gamma
from .whittaker import (
    WhittakerSpec,
    index_set,
    log_unitary_constant,
    unitary_constant,
    whittaker_terms,
    whittaker_V,
)

__all__ = [
    "BesselMomentParams",
    "bessel_moment",
    "bessel_moment_quad",
    "triple_term",
    "LocalIntegralSpec",
    "local_integral_T",
    "local_integral_T_quad",
    "ExponentReport",
    "exponent_report",
    "weight_T1",
    "weight_T1_quad",
    "weight_T2",
    "weight_T2_quad",
    "WEIGHT_ASPECT_CALIBRATION",
    "MvCheckResult",
    "mv_check",
    "mv_s_closed_form",
    "selection_rule_integral",
]

_LOG_2PI = math.log(2.0 * math.pi)


# ---------------------------------------------------------------------------
# Bessel moment
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BesselMomentParams:
    """Parameters of int_0^inf y^lam K_mu(y) K_nu(y) dy."""

    lam: complex
    mu: complex
    nu: complex

    def converges(self) -> bool:
        return self.lam.real + 1.0 > abs(self.mu.real) + abs(self.nu.real)


def _require_convergent(p: BesselMomentParams):
    if not p.converges():
        raise DivergentIntegralError(
            f"moment diverges: Re(lam)+1 = {p.lam.real + 1} <= "
            f"|Re mu| + |Re nu| = {abs(p.mu.real) + abs(p.nu.real)}"
        )


def bessel_moment(p: BesselMomentParams) -> complex:
    """Closed form 2^(lam-2) Gamma(lam+1)^(-1) prod Gamma((1+lam+-mu+-nu)/2)."""
    _require_convergent(p)
    lg = (p.lam - 2.0) * math.log(2.0) - log_gamma(p.lam + 1.0)
    for smu in (+1, -1):
        for snu in (+1, -1):
            lg += log_gamma((1.0 + p.lam + smu * p.mu + snu * p.nu) / 2.0)
    return cmath.exp(lg)


def bessel_moment_quad(
    p: BesselMomentParams, budget: AccuracyBudget | None = None
) -> QuadratureResult:
    """Adaptive quadrature of the defining integral (oracle for the closed form)."""
    from .special_functions import bessel_k_full

    _require_convergent(p)
    budget = budget or AccuracyBudget(rel_tol=1e-10, abs_tol=1e-30, max_subdivisions=4000)

    def f(y):
        k1 = bessel_k_full(p.mu, y, refine=False).value
        k2 = k1 if p.nu == p.mu else bessel_k_full(p.nu, y, refine=False).value
        return y**p.lam * np.atleast_1d(k1) * np.atleast_1d(k2)

    return integrate_semi_infinite(f, budget)


# ---------------------------------------------------------------------------
# triple-product terms
# ---------------------------------------------------------------------------


def _log_k_pair_moment(s: complex, mu: complex, nu: complex) -> complex:
    """log of int_0^inf y^s K_mu(4 pi y) K_nu(4 pi y) dy/y.

    Substituting u = 4 pi y reduces to the Bessel moment at lam = s - 1:
    value = (1/8) (2 pi)^(-s) Gamma(s)^(-1) prod Gamma((s +- mu +- nu)/2).
    """
    if not (s.real > abs(mu.real) + abs(nu.real)):
        raise DivergentIntegralError(
            f"pair moment diverges: Re(s) = {s.real} <= "
            f"|Re mu| + |Re nu| = {abs(mu.real) + abs(nu.real)}"
        )
    lg = -math.log(8.0) - s * _LOG_2PI - log_gamma(s)
    for smu in (+1, -1):
        for snu in (+1, -1):
            lg += log_gamma((s + smu * mu + snu * nu) / 2.0)
    return lg


def triple_term(a: complex, b: complex, c: complex, r: float) -> complex:
    """One term of the expanded local integral:

        Gamma((a-b+-c)/2) Gamma((a+b+-c)/2 + ir) / (8 Gamma(a+ir) (2 pi)^(a+ir))

    which equals int_0^inf y^(a+ir) K_(b+ir)(4 pi y) K_c(4 pi y) dy/y.
    """
    a, b, c = complex(a), complex(b), complex(c)
    return cmath.exp(_log_k_pair_moment(a + 1j * r, b + 1j * r, c))


# ---------------------------------------------------------------------------
# exponent classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExponentReport:
    """Per-term Stirling exponents of |T| in the spectral parameter.

    sigma(p, q) = p - q - w1/2 - m/2 - 1; the maximum is always <= -1 and
    the equality case (extremal decay r^-1) occurs exactly at w1 = -k, where
    the maximizing term is ((m-k)/2, 0).
    """

    terms: tuple
    max_sigma: float
    argmax: tuple
    extremal: bool


def exponent_report(k: int, m: int, w1: int) -> ExponentReport:
    terms = []
    best = -math.inf
    for (p, q) in index_set(k, m, w1):
        sigma = p - q - w1 / 2.0 - m / 2.0 - 1.0
        terms.append(((p, q), sigma))
        best = max(best, sigma)
    argmax = tuple(pq for (pq, s) in terms if s == best)
    return ExponentReport(
        terms=tuple(terms),
        max_sigma=best,
        argmax=argmax,
        extremal=(best == -1.0),
    )


# ---------------------------------------------------------------------------
# the local integral T
# ---------------------------------------------------------------------------


@dataclass
class LocalIntegralSpec:
    """Data of the local triple-product integral.

    spec1/w1: Whittaker vector of the first representation; spec2/w2: of the
    second (parameters k', m', r'); induced_weight: the weight k of the third
    (induced) vector.  The induced vector shares spec1's spectral parameter,
    as in the application where both come from the same representation;
    ``induced_r`` overrides this for symmetric spherical checks.
    """

    spec1: WhittakerSpec
    w1: int
    spec2: WhittakerSpec
    w2: int
    induced_weight: int
    induced_r: float | None = None

    def selection_ok(self) -> bool:
        return self.w1 - self.w2 + self.induced_weight == 0

    def r_induced(self) -> float:
        return self.spec1.r if self.induced_r is None else self.induced_r

    @classmethod
    def spherical(cls, r1: float, r2: float, r3: float) -> "LocalIntegralSpec":
        return cls(
            spec1=WhittakerSpec.pinned(0, 0, r1),
            w1=0,
            spec2=WhittakerSpec.pinned(0, 0, r2),
            w2=0,
            induced_weight=0,
            induced_r=r3,
        )


def _require_pinned(spec: WhittakerSpec, w: int, which: str):
    if not spec.is_pinned(w):
        raise UnpinnedCoefficientError(
            f"{which} component w = {w} has unpinned coefficients; "
            "closed-path evaluation would depend on arbitrary defaults"
        )


def local_integral_T(
    s: LocalIntegralSpec, b_convention: str = "half_weight"
) -> complex:
    """Closed form of T = C1 C2 int conj(V1) V2 y^(-1+ir) dy/y.

    Zero when the selection rule w1 - w2 + k != 0 fails.  Otherwise the term
    sum over both index sets with the (a, b, c) assignments described in the
    module docstring.  ``b_convention`` selects the half-weight b (default)
    or the unhalved "paper_literal" variant used by the deliberate-failure
    verification check.
    """
    if b_convention not in ("half_weight", "paper_literal"):
        raise ValueError(f"unknown b_convention {b_convention!r}")
    if not s.selection_ok():
        return 0.0 + 0.0j
    _require_pinned(s.spec1, s.w1, "spec1")
    _require_pinned(s.spec2, s.w2, "spec2")
    k1, k2 = s.spec1.k, s.spec2.k
    r1, r2 = s.spec1.r, s.spec2.r
    r_ind = s.r_induced()
    log_c12 = log_unitary_constant(k1, s.spec1.m, r1) + log_unitary_constant(
        k2, s.spec2.m, r2
    )
    halved = b_convention == "half_weight"
    total = 0.0 + 0.0j
    for t1 in whittaker_terms(s.spec1, s.w1):
        for t2 in whittaker_terms(s.spec2, s.w2):
            a = 1.0 + (k1 + k2) / 2.0 + t1.p + t1.q + t2.p + t2.q
            if halved:
                b_re = t1.p - t1.q - s.w1 / 2.0
                c_val = -1j * r2 + t2.p - t2.q - s.w2 / 2.0
            else:
                b_re = t1.p - t1.q - s.w1
                c_val = -1j * r2 + t2.p - t2.q - s.w2
            # conj(V1) carries K-order +i r1 + b; the induced vector carries
            # y^(1 + i r_ind), combining to the pair moment at s = a + i r_ind
            lg = _log_k_pair_moment(
                a + 1j * r_ind, b_re + 1j * r1, c_val
            )
            total += t1.coeff * t2.coeff * cmath.exp(lg + log_c12)
    return total


def local_integral_T_quad(
    s: LocalIntegralSpec,
    budget: AccuracyBudget | None = None,
    b_convention: str = "half_weight",
) -> QuadratureResult:
    """Direct quadrature of the defining integral of T.

    ``b_convention`` only affects the closed path; the defining integral is
    what it is, so this is the arbiter between the two b variants.
    """
    del b_convention
    if not s.selection_ok():
        return QuadratureResult(0.0 + 0.0j, 0.0)
    budget = budget or AccuracyBudget(rel_tol=1e-9, abs_tol=1e-30, max_subdivisions=4000)
    c1 = unitary_constant(s.spec1.k, s.spec1.m, s.spec1.r)
    c2 = unitary_constant(s.spec2.k, s.spec2.m, s.spec2.r)
    expo = -1.0 + 1j * s.r_induced()

    def f(y):
        v1 = np.conj(np.atleast_1d(whittaker_V(s.spec1, s.w1, y)))
        v2 = np.atleast_1d(whittaker_V(s.spec2, s.w2, y))
        return v1 * v2 * y**expo / y

    res = integrate_semi_infinite(f, budget, split=0.5)
    scale = c1 * c2
    return QuadratureResult(res.value * scale, res.abs_err * scale)


# ---------------------------------------------------------------------------
# weight aspect
# ---------------------------------------------------------------------------

# Each closed form below reproduces its defining integral up to one absolute
# constant; both integrals share the same one, frozen here and validated
# against quadrature at a reference point by the verification suite.
WEIGHT_ASPECT_CALIBRATION = 1.0 / (16.0 * math.pi)


def weight_T1(k: int, r_prime: float) -> float:
    """Weight-aspect integral T1 (spherical second factor), normalized form:

        |Gamma((1+k+ir')/2)|^2 |Gamma((1+ir')/2)|^2
            / (Gamma(1+k/2)^2 |Gamma(1+ir')|).

    Real and positive.  The defining integral equals this value times
    WEIGHT_ASPECT_CALIBRATION.
    """
    if k < 0 or k % 2 != 0:
        raise ValueError("k must be a non-negative even integer")
    lg = (
        2.0 * log_gamma((1.0 + k + 1j * r_prime) / 2.0).real
        + 2.0 * log_gamma((1.0 + 1j * r_prime) / 2.0).real
        - 2.0 * log_gamma(1.0 + k / 2.0).real
        - log_gamma(1.0 + 1j * r_prime).real
    )
    return math.exp(lg)


def weight_T1_quad(k: int, r_prime: float, budget=None) -> QuadratureResult:
    """Defining integral of T1, reduced over K by Schur orthogonality:

        (2 pi)^(k/2) / (Gamma(1+k/2) |Gamma(1+ir')|)
            * int_0^inf y^(k/2+1) K_(ir')(4 pi y) K_(k/2)(4 pi y) dy/y.
    """
    from .special_functions import bessel_k_full

    budget = budget or AccuracyBudget(rel_tol=1e-10, abs_tol=1e-30, max_subdivisions=4000)
    pref = math.exp(
        (k / 2.0) * _LOG_2PI
        - log_gamma(1.0 + k / 2.0).real
        - log_gamma(1.0 + 1j * r_prime).real
    )

    def f(y):
        k1 = np.atleast_1d(bessel_k_full(1j * r_prime, 4 * math.pi * y, refine=False).value)
        k2 = np.atleast_1d(bessel_k_full(k / 2.0, 4 * math.pi * y, refine=False).value)
        return y ** (k / 2.0 + 1.0) * k1 * k2 / y

    res = integrate_semi_infinite(f, budget, split=0.5)
    return QuadratureResult(res.value * pref, res.abs_err * pref)


def weight_T2(k: int, r_prime: float) -> complex:
    """Weight-aspect integral T2 (induced spherical vector), normalized form:

        (2 pi)^(-ir') Gamma((k+1+ir')/2)^2 Gamma((1+ir')/2)^2
            / (Gamma(1+k/2)^2 Gamma(1+ir')).

    Complex, with |weight_T2| = weight_T1 identically; the defining integral
    equals this value times WEIGHT_ASPECT_CALIBRATION.
    """
    if k < 0 or k % 2 != 0:
        raise ValueError("k must be a non-negative even integer")
    lg = (
        -1j * r_prime * _LOG_2PI
        + 2.0 * log_gamma((k + 1.0 + 1j * r_prime) / 2.0)
        + 2.0 * log_gamma((1.0 + 1j * r_prime) / 2.0)
        - 2.0 * log_gamma(1.0 + k / 2.0)
        - log_gamma(1.0 + 1j * r_prime)
    )
    return cmath.exp(lg)


def weight_T2_quad(k: int, r_prime: float, budget=None) -> QuadratureResult:
    """Defining integral of T2:

        C^2/(k+1) * int_0^inf y^(-1+ir') ||W(y)||^2 dy/y,

    with ||W(y)||^2 = y^(k+2) sum_j binom(k,j) K_((k-2j)/2)(4 pi y)^2 and C
    the unitary constant of the (k, k, r=0) Whittaker vector.
    """
    from .special_functions import bessel_k_full

    budget = budget or AccuracyBudget(rel_tol=1e-10, abs_tol=1e-30, max_subdivisions=4000)
    c0 = unitary_constant(k, k, 0.0)
    pref = c0 * c0 / (k + 1.0)
    orders = [(math.comb(k, j), (k - 2 * j) / 2.0) for j in range(k + 1)]

    def f(y):
        w2 = np.zeros_like(np.atleast_1d(y), dtype=float)
        for cjk, order in orders:
            kv = np.atleast_1d(
                bessel_k_full(order, 4 * math.pi * y, refine=False).value
            ).real
            w2 = w2 + cjk * kv * kv
        return y ** (k + 2.0) * w2 * y ** (-1.0 + 1j * r_prime) / y

    res = integrate_semi_infinite(f, budget, split=max(0.5, (k + 2) / (8 * math.pi)))
    return QuadratureResult(res.value * pref, res.abs_err * pref)


# ---------------------------------------------------------------------------
# Michel-Venkatesh relation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MvCheckResult:
    """Both sides of the S = |T|^2 / (4 pi) relation for a spherical triple.

    ``ratio`` is S_direct / (|T|^2 / 4 pi) with T evaluated on exactly
    unit-normalized vectors.  In the measure conventions realized here the
    two sides reproducibly satisfy S = |T|^2 / (8 pi) instead (the ratio sits
    at 1/2, constant across parameter triples); see mv_s_closed_form for the
    elementary identity that pins this down analytically.
    """

    s_direct: float
    s_err: float
    t_value: complex
    ratio: float | None
    selection_violated: bool = False


def _radial_tables(rs, t_max: float, n: int):
    from scipy.interpolate import CubicSpline

    from .principal_series import spherical_coefficient_radial

    ts = np.linspace(0.0, t_max, n)
    splines = []
    for r in rs:
        vals = np.array([spherical_coefficient_radial(r, t) for t in ts])
        splines.append(CubicSpline(ts, vals))
    return splines


def _nak_integral(splines, t_max: float, xi_max: float, eta_max: float, n_sub: int):
    """2 pi  int int Phi1 Phi2 Phi3 (t(u, rho))  u  rho^-3  du  drho.

    Coordinates u = sinh(xi), rho = exp(eta); the matrix-coefficient product
    is evaluated through the radial tables at t = log(lambda_+ / rho), where
    lambda_+ is the top eigenvalue of (n(x) a(y))^dagger (n(x) a(y)) with
    u = |x|, rho = |y| (both phases integrate out).
    """
    xg, wg = np.polynomial.legendre.leggauss(8)

    def axis(lo, hi, n_panels):
        edges = np.linspace(lo, hi, n_panels + 1)
        half = 0.5 * (edges[1:] - edges[:-1])
        mid = 0.5 * (edges[1:] + edges[:-1])
        pts = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
        wts = (half[:, None] * wg[None, :]).ravel()
        return pts, wts

    xi, wxi = axis(0.0, xi_max, n_sub)
    eta, weta = axis(-eta_max, eta_max, 2 * n_sub)
    u = np.sinh(xi)
    rho = np.exp(eta)
    U, R = np.meshgrid(u, rho, indexing="ij")
    tr = R * R + U * U + 1.0
    lam_plus = 0.5 * (tr + np.sqrt(np.maximum(tr * tr - 4.0 * R * R, 0.0)))
    t = np.log(lam_plus / R)
    prod = np.ones_like(t)
    for sp in splines:
        prod *= np.where(t <= t_max, sp(np.minimum(t, t_max)), 0.0)
    # measure factors: u rho^-3 du drho -> u cosh(xi) rho^-2 dxi deta
    integrand = prod * U * np.cosh(xi)[:, None] * np.exp(-2.0 * eta)[None, :]
    return 2.0 * math.pi * float(wxi @ integrand @ weta)


def mv_check(
    r1: float,
    r2: float,
    r3: float,
    budget: AccuracyBudget | None = None,
    engineered_violation: bool = False,
) -> MvCheckResult:
    """Check S = |T|^2 / (4 pi) for a spherical triple (k = 0 throughout).

    T comes from the closed-form local integral; S is quadrature of the
    product of the three spherical matrix coefficients over NA coordinates
    with the |y|^-2 dx dy^x / (2 pi) measure (phases integrated out, radial
    values interpolated from tables).  Returns both sides and their ratio.

    ``engineered_violation`` replaces the second vector by a weight-2
    component so the selection rule fails; T is then exactly 0 and S is not
    computed.
    """
    del budget
    if engineered_violation:
        spec = LocalIntegralSpec(
            spec1=WhittakerSpec.pinned(0, 0, r1),
            w1=0,
            spec2=WhittakerSpec.pinned(0, 2, r2),
            w2=2,
            induced_weight=0,
            induced_r=r3,
        )
        t_val = local_integral_T(spec)
        return MvCheckResult(
            s_direct=float("nan"),
            s_err=float("nan"),
            t_value=t_val,
            ratio=None,
            selection_violated=True,
        )
    spec = LocalIntegralSpec.spherical(r1, r2, r3)
    # The relation requires unit vectors in the Whittaker models; the
    # tabulated unitary constant is normalized only up to absolute constants
    # (its square times the norm integral is 1/(32 pi^2)), so the closed
    # local integral is rescaled by that norm defect here.
    t_val = local_integral_T(spec) * (32.0 * math.pi**2)
    t_max = 42.0
    splines = _radial_tables((r1, r2, r3), t_max, 1200)
    coarse = _nak_integral(splines, t_max, 14.0, 16.0, 28)
    fine = _nak_integral(splines, t_max, 14.0, 16.0, 56)
    s_direct = fine
    s_err = abs(fine - coarse)
    denom = abs(t_val) ** 2 / (4.0 * math.pi)
    ratio = s_direct / denom if denom > 0 else None
    return MvCheckResult(
        s_direct=s_direct, s_err=s_err, t_value=t_val, ratio=ratio
    )


def mv_s_closed_form(r1: float, r2: float, r3: float) -> float:
    """Elementary closed form of S for the spherical triple.

    Follows from Phi_r(t) = sin(rt)/(r sinh t), the hyperbolic volume
    element 4 pi sinh^2 t dt, and int_0^inf sin(st)/sinh(t) dt
    = (pi/2) tanh(pi s / 2); used as an independent oracle in tests.
    Combined with the gamma closed form of T and the identity

        sum of the three tanh terms minus the fourth
            = prod_i sinh(pi r_i) / prod_j cosh(pi s_j / 2),

    (s_j the four sign combinations r3 +- r1 +- r2) this gives exactly
    S = |T|^2 / (8 pi) on unit vectors.
    """
    pref = math.pi**2 / (2.0 * r1 * r2 * r3)

    def th(s):
        return math.tanh(math.pi * s / 2.0)

    return pref * (
        th(r1 + r2 - r3) + th(r1 - r2 + r3) + th(-r1 + r2 + r3) - th(r1 + r2 + r3)
    )


# ---------------------------------------------------------------------------
# convention check: the K-integral behind the selection rule
# ---------------------------------------------------------------------------


def selection_rule_integral(
    m1: int, w_row1: int, w_col1: int,
    m2: int, w_row2: int, w_col2: int,
    delta_weight: int, delta_order: int,
    rule=None,
) -> complex:
    """K-quadrature of D^m1_{w_row1, w_col1} conj(D^m2_{w_row2, w_col2}) delta_N.

    With delta_N truncated at order >= m1 + m2 this equals 1 exactly when
    w_col1 - w_col2 + k = 0 and w_row1 = w_col1, w_row2 = w_col2, and 0
    otherwise; this single integral pins every phase convention behind the
    selection rule.
    """
    from .su2 import (
        DeltaTruncation,
        euler_rule,
        k_quadrature,
        rep_matrix,
        truncated_delta,
        weight_index,
    )

    if rule is None:
        rule = euler_rule(2 * (m1 + m2) + 2)
    delta = truncated_delta(DeltaTruncation(delta_weight, delta_order))

    def f(kap):
        d1 = rep_matrix(m1, kap)[..., weight_index(m1, w_row1), weight_index(m1, w_col1)]
        d2 = rep_matrix(m2, kap)[..., weight_index(m2, w_row2), weight_index(m2, w_col2)]
        return d1 * np.conj(d2) * delta(kap)

    from .su2 import k_quadrature as kq

    return kq(f, rule)
