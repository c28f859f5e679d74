"""Adaptive quadrature on (0, inf) for special-function integrands.

The half line is split at y = 1: the left piece uses the logarithmic
substitution y = exp(-u) (resolving y^s behaviour at 0), the right piece uses
y = 1 + sinh(v) (tracking exponential decay at infinity).  Each transformed
piece is integrated by bisection-adaptive Gauss-Legendre panels with an
embedded lower-order rule providing the error estimate.  Integrands are
called with numpy arrays of y values and must broadcast.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExhaustedError
from .special_functions import AccuracyBudget, _gl_rule

__all__ = ["QuadratureResult", "integrate_semi_infinite", "integrate_interval"]


@dataclass(frozen=True)
class QuadratureResult:
    """A complex integral value with its absolute-error estimate."""

    value: complex
    abs_err: float


_N_HIGH = 21
_N_LOW = 10


# panels whose error estimate is below this multiple of their absolute mass
# are at the double-precision floor; splitting them cannot help
_FLOOR = 64.0 * np.finfo(float).eps


def _panel(f, a: float, b: float):
    """High/low order estimates of int_a^b f on one panel, plus |f| mass."""
    xh, wh = _gl_rule(_N_HIGH)
    xl, wl = _gl_rule(_N_LOW)
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    vh = f(mid + half * xh)
    vl = f(mid + half * xl)
    high = half * np.dot(wh, vh)
    low = half * np.dot(wl, vl)
    mass = half * np.dot(wh, np.abs(vh))
    return high, abs(high - low), float(mass.real)


def integrate_interval(f, a: float, b: float, budget: AccuracyBudget) -> QuadratureResult:
    """Adaptive panel integration of a vectorized complex integrand on [a, b].

    Subdivision stops per panel once its error estimate reaches the round-off
    floor for its magnitude; the reported error stays honest in that case.
    Raises BudgetExhaustedError only when the cap is hit with splittable
    panels still above tolerance.
    """
    value, err, mass = _panel(f, a, b)
    total = value
    total_err = err
    floor_err = 0.0
    heap = []
    if err > _FLOOR * mass:
        heap.append((-err, a, b, value, err))
    else:
        floor_err = err
    splits = 0
    while heap and total_err > max(budget.abs_tol, budget.rel_tol * abs(total)):
        if splits >= budget.max_subdivisions:
            raise BudgetExhaustedError(
                f"interval quadrature: error {total_err:.3e} after "
                f"{splits} subdivisions"
            )
        _, pa, pb, pv, pe = heapq.heappop(heap)
        pm = 0.5 * (pa + pb)
        v1, e1, m1 = _panel(f, pa, pm)
        v2, e2, m2 = _panel(f, pm, pb)
        total += (v1 + v2) - pv
        total_err = floor_err + sum(-h[0] for h in heap)
        for (vv, ee, mm, aa, bb) in ((v1, e1, m1, pa, pm), (v2, e2, m2, pm, pb)):
            if ee > _FLOOR * mm:
                heapq.heappush(heap, (-ee, aa, bb, vv, ee))
                total_err += ee
            else:
                floor_err += ee
                total_err += ee
        splits += 1
    return QuadratureResult(complex(total), float(total_err))


def integrate_semi_infinite(
    f,
    budget: AccuracyBudget | None = None,
    split: float = 1.0,
    u_max: float = 38.0,
    v_max: float = 9.0,
) -> QuadratureResult:
    """Integrate f over (0, inf) with the split-and-substitute scheme.

    ``u_max`` bounds the logarithmic piece (y down to split*exp(-u_max));
    ``v_max`` bounds the sinh piece (y up to split + sinh(v_max)).  Both are
    extended automatically while the outermost panels still contribute.
    """
    budget = budget or AccuracyBudget(rel_tol=1e-10, abs_tol=1e-14)

    def g_left(u):
        y = split * np.exp(-u)
        return f(y) * y

    def g_right(v):
        y = split + np.sinh(v)
        return f(y) * np.cosh(v)

    left = _integrate_growing(g_left, u_max, budget)
    right = _integrate_growing(g_right, v_max, budget)
    return QuadratureResult(
        left.value + right.value, left.abs_err + right.abs_err
    )


def _integrate_growing(g, x_max: float, budget: AccuracyBudget) -> QuadratureResult:
    """Integrate g on [0, x_max], extending x_max while the tail matters."""
    result = integrate_interval(g, 0.0, x_max, budget)
    scale = abs(result.value)
    for _ in range(8):
        tail, tail_err, _ = _panel(g, x_max, x_max * 1.5)
        if abs(tail) + tail_err <= max(budget.abs_tol, 0.5 * budget.rel_tol * scale):
            break
        ext = integrate_interval(g, x_max, x_max * 1.5, budget)
        result = QuadratureResult(
            result.value + ext.value, result.abs_err + ext.abs_err
        )
        x_max *= 1.5
        scale = max(scale, abs(result.value))
    return result
