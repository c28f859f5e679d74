"""Triple-product gamma factors at a complex place and analytic conductors.

A gamma-factor set is the multiset of shifts mu_j in prod_j Gamma(s + mu_j).
At a complex place each Gamma counts twice in the conductor,

    C(s) = prod_j (1 + |s + mu_j|)^2,

which is the convention forced by the stated growth exponents: the cuspidal
set (8 shifts, 4 growing with the spectral parameter) then has log-log slope
8 and the Eisenstein set (4 shifts, 2 growing) slope 4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = [
    "GammaFactorSet",
    "triple_gamma_cuspidal",
    "triple_gamma_eisenstein",
    "ConductorReport",
    "analytic_conductor",
    "conductor_slope",
]


@dataclass(frozen=True)
class GammaFactorSet:
    """Multiset of gamma shifts, with the generating family retained so the
    conductor's growth slope can be probed in the designated parameter."""

    shifts: tuple
    kind: str
    growth_parameter: float
    family: object = field(default=None, repr=False, compare=False)


def _cuspidal_shifts(k: int, k_prime: int, r_n: float, r_prime: float) -> tuple:
    base = abs(k) / 2.0 + abs(k_prime) / 4.0
    shifts = [
        1j * (s1 * r_n + s2 * r_prime / 2.0) + base
        for s1 in (+1, -1)
        for s2 in (+1, -1)
    ]
    for s2 in (+1, -1):
        shifts.extend([1j * s2 * r_prime / 2.0 + abs(k_prime) / 4.0] * 2)
    return tuple(shifts)


def triple_gamma_cuspidal(
    k: int, k_prime: int, r_n: float, r_prime: float
) -> GammaFactorSet:
    """The 8 shifts of the cuspidal triple product:
    {+-i r_n +- i r'/2 + |k|/2 + |k'|/4} plus {+-i r'/2 + |k'|/4} twice each."""
    return GammaFactorSet(
        shifts=_cuspidal_shifts(k, k_prime, r_n, r_prime),
        kind="cuspidal",
        growth_parameter=float(r_n),
        family=lambda r: _cuspidal_shifts(k, k_prime, r, r_prime),
    )


def _eisenstein_shifts(k: int, k_prime: int, r_n: float, t: float) -> tuple:
    shifts = [1j * t + abs(k_prime) / 4.0] * 2
    shifts.extend(
        1j * (s1 * r_n + t) + abs(k) / 2.0 + abs(k_prime) / 4.0 for s1 in (+1, -1)
    )
    return tuple(shifts)


def triple_gamma_eisenstein(
    k: int, k_prime: int, r_n: float, t: float
) -> GammaFactorSet:
    """The 4 shifts of the Eisenstein triple product:
    {i t + |k'|/4} twice plus {+-i r_n + i t + |k|/2 + |k'|/4}."""
    return GammaFactorSet(
        shifts=_eisenstein_shifts(k, k_prime, r_n, t),
        kind="eisenstein",
        growth_parameter=float(r_n),
        family=lambda r: _eisenstein_shifts(k, k_prime, r, t),
    )


@dataclass(frozen=True)
class ConductorReport:
    """Conductor value with the log-log slope in the growth parameter."""

    value: float
    slope: float | None


def _conductor_value(shifts, s: complex) -> float:
    log_c = 0.0
    for mu in shifts:
        log_c += 2.0 * math.log(1.0 + abs(s + mu))
    return math.exp(log_c)


def analytic_conductor(g: GammaFactorSet, s: complex) -> ConductorReport:
    """C(s) = prod (1 + |s + mu_j|)^2, with d log C / d log r at the set's
    growth parameter when the generating family is available."""
    s = complex(s)
    value = _conductor_value(g.shifts, s)
    slope = None
    if g.family is not None and g.growth_parameter > 0:
        slope = conductor_slope(g, s)
    return ConductorReport(value=value, slope=slope)


def conductor_slope(g: GammaFactorSet, s: complex, h: float = 1.02) -> float:
    """Centered log-log finite difference of the conductor in the growth
    parameter at its probe value."""
    if g.family is None:
        raise ValueError("gamma-factor set carries no generating family")
    r = g.growth_parameter
    hi = math.log(_conductor_value(g.family(r * h), s))
    lo = math.log(_conductor_value(g.family(r / h), s))
    return (hi - lo) / (2.0 * math.log(h))
