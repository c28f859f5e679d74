"""Whittaker vectors for GL(2, C): index sets, radial components, unitary
normalization, and norms.

A weight-k representation with spectral parameter r and K-type rho_m has a
vector-valued radial Whittaker function whose weight-w component is

    V_w(y) = y^(k/2+1) sum_{(p,q)} C_{p,q} y^(p+q) K_{-ir+p-q-w/2}(4 pi y),

the sum running over the index set of (k, m, w).  Columns with a single term
are pinned (coefficient 1, or binom(k, j)^(1/2) when k = m); multi-term
coefficients are not determined by any identity used here and default to 1
with the column flagged as unpinned.  Conventions: k >= 0, m >= k,
m = k (mod 2), r real of either sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import UnpinnedCoefficientError
from .special_functions import bessel_k_full, log_gamma

__all__ = [
    "index_set",
    "WhittakerSpec",
    "WhittakerTerm",
    "whittaker_terms",
    "whittaker_V",
    "unitary_constant",
    "whittaker_norm_sq",
    "whittaker_norm_sq_quad",
    "log_unitary_constant",
]


def _check_km(k: int, m: int):
    if k < 0 or m < k or (m - k) % 2 != 0:
        raise ValueError(f"need 0 <= k <= m with m = k (mod 2), got k={k}, m={m}")


def _check_weight(m: int, w: int):
    if abs(w) > m or (m - w) % 2 != 0:
        raise ValueError(f"w = {w} is not an M-weight of rho_{m}")


def index_set(k: int, m: int, w: int) -> list[tuple[int, int]]:
    """Admissible (p, q) pairs for the weight-w component.

    The five constraints: p >= 0, q >= 0, p >= (w - k)/2, q >= -(w + k)/2,
    p + q <= (m - k)/2.  The set is never empty for a valid weight.
    """
    _check_km(k, m)
    _check_weight(m, w)
    p_min = max(0, (w - k) // 2)
    q_min = max(0, (-w - k) // 2)
    cap = (m - k) // 2
    out = []
    for p in range(p_min, cap - q_min + 1):
        for q in range(q_min, cap - p + 1):
            out.append((p, q))
    return out


@dataclass(frozen=True)
class WhittakerTerm:
    """One summand of a weight component: coeff * y^(p+q) K_order(4 pi y)."""

    w: int
    p: int
    q: int
    coeff: float
    order: complex


@dataclass
class WhittakerSpec:
    """Parameters (k, m, r) plus the per-component coefficient table.

    ``coeffs`` maps (w, p, q) to the real coefficient C_{p,q} of that
    component; ``unpinned_weights`` lists the w whose coefficients are
    defaults rather than pinned values.  Use ``WhittakerSpec.pinned`` unless
    you are supplying your own coefficients.
    """

    k: int
    m: int
    r: float
    coeffs: dict = field(default_factory=dict)
    unpinned_weights: frozenset = frozenset()

    def __post_init__(self):
        _check_km(self.k, self.m)
        for (w, p, q) in self.coeffs:
            if (p, q) not in index_set(self.k, self.m, w):
                raise ValueError(f"coefficient key {(w, p, q)} outside the index set")

    @classmethod
    def pinned(cls, k: int, m: int, r: float) -> "WhittakerSpec":
        """Spec with every single-term column pinned.

        Single-term columns carry 1, except that for k = m every column is
        the single term (0, 0) with coefficient binom(k, j)^(1/2),
        j = (k - w)/2.  Multi-term columns default to 1 and are flagged.
        """
        _check_km(k, m)
        coeffs = {}
        unpinned = set()
        for w in range(-m, m + 1, 2):
            idx = index_set(k, m, w)
            if len(idx) == 1:
                (p, q) = idx[0]
                if k == m:
                    val = math.sqrt(math.comb(k, (k - w) // 2))
                else:
                    val = 1.0
                coeffs[(w, p, q)] = val
            else:
                for (p, q) in idx:
                    coeffs[(w, p, q)] = 1.0
                unpinned.add(w)
        return cls(k=k, m=m, r=float(r), coeffs=coeffs, unpinned_weights=frozenset(unpinned))

    def is_pinned(self, w: int) -> bool:
        return w not in self.unpinned_weights


def whittaker_terms(spec: WhittakerSpec, w: int) -> list[WhittakerTerm]:
    """Term list of the weight-w component, with Bessel orders
    -i r + p - q - w/2 generated directly from the index set."""
    _check_weight(spec.m, w)
    terms = []
    for (p, q) in index_set(spec.k, spec.m, w):
        try:
            coeff = spec.coeffs[(w, p, q)]
        except KeyError:
            raise UnpinnedCoefficientError(
                f"no coefficient configured for (w, p, q) = {(w, p, q)}"
            ) from None
        order = -1j * spec.r + p - q - w / 2.0
        terms.append(WhittakerTerm(w=w, p=p, q=q, coeff=float(coeff), order=order))
    return terms


def whittaker_V(spec: WhittakerSpec, w: int, y):
    """The weight-w radial component V_w(y), vectorized over y > 0."""
    scalar = np.isscalar(y) or getattr(y, "ndim", 0) == 0
    ya = np.atleast_1d(np.asarray(y, dtype=float))
    if np.any(ya <= 0):
        raise ValueError("y must be positive")
    acc = np.zeros_like(ya, dtype=complex)
    for t in whittaker_terms(spec, w):
        kv = bessel_k_full(t.order, 4.0 * math.pi * ya, refine=False).value
        acc = acc + t.coeff * ya ** (t.p + t.q) * np.atleast_1d(kv)
    acc = acc * ya ** (spec.k / 2.0 + 1.0)
    return complex(acc[0]) if scalar else acc


def log_unitary_constant(k: int, m: int, r: float) -> float:
    """log of the unitary normalization constant.

    The constant itself overflows for large |r| (it grows like
    exp(pi |r| / 2)); closed forms that pair it with gamma factors must sum
    logs and exponentiate once.
    """
    _check_km(k, m)
    return (
        (m / 2.0) * math.log(2.0 * math.pi)
        + 0.5 * log_gamma(m + 2).real
        - 0.5 * log_gamma(1 + m / 2.0 + k / 2.0).real
        - 0.5 * log_gamma(1 + m / 2.0 - k / 2.0).real
        - log_gamma(1 + m / 2.0 + 1j * r).real
    )


def unitary_constant(k: int, m: int, r: float) -> float:
    """Normalization constant making the K-type embedding unitary.

    C = (2 pi)^(m/2) Gamma(m+2)^(1/2)
        [Gamma(1+m/2+k/2) Gamma(1+m/2-k/2)]^(-1/2) |Gamma(1+m/2+ir)|^(-1),

    computed in log space.  Satisfies C^2 * whittaker_norm_sq = 1/(32 pi^2).
    """
    return math.exp(log_unitary_constant(k, m, r))


def whittaker_norm_sq(k: int, m: int, r: float) -> float:
    """Closed form of int_0^inf |V_m(y)|^2 dy/y (top-weight component):

    Gamma(1+m/2+k/2) Gamma(1+m/2-k/2) |Gamma(1+m/2+ir)|^2
        / (8 Gamma(m+2) (2 pi)^(m+2)).
    """
    _check_km(k, m)
    lg = (
        log_gamma(1 + m / 2.0 + k / 2.0).real
        + log_gamma(1 + m / 2.0 - k / 2.0).real
        + 2.0 * log_gamma(1 + m / 2.0 + 1j * r).real
        - math.log(8.0)
        - log_gamma(m + 2).real
        - (m + 2) * math.log(2.0 * math.pi)
    )
    return math.exp(lg)


def whittaker_norm_sq_quad(k: int, m: int, r: float, budget=None):
    """Quadrature of the defining norm integral (oracle for the closed form)."""
    from .quadrature import integrate_semi_infinite
    from .special_functions import AccuracyBudget

    budget = budget or AccuracyBudget(rel_tol=1e-9, abs_tol=1e-30, max_subdivisions=4000)
    spec = WhittakerSpec.pinned(k, m, r)

    def f(y):
        v = whittaker_V(spec, m, y)
        return (np.abs(np.atleast_1d(v)) ** 2) / y

    # integrand peaks near y ~ (m+2)/(8 pi); keep the split close to it
    return integrate_semi_infinite(f, budget, split=max(0.25, (m + 2) / (8 * math.pi)))
