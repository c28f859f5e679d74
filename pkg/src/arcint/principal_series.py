"""Principal series of SL(2, C) in the induced model on functions on K.

The representation with weight k and spectral parameter r acts on the
left-M-equivariant space W_k in L^2(K) by

    (I(g) f)(kappa) = a(kappa g)^(2 + 2ir) f(kappa(kappa g)),

where g = n(x) diag(a, 1/a) kappa is the Iwasawa decomposition with a > 0.
The A-coordinate convention is y = a^2, so the exponent 2 + 2ir carries both
the inducing character and the half-density twist in one place.  Model
functions are stored as K-type coefficient expansions over the orthonormal
basis sqrt(l+1) D^l_{k,t}.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import TruncationError
from .su2 import (
    KQuadratureRule,
    check_unimodular,
    euler_rule,
    rep_matrix,
    weight_index,
    weights_of,
)

__all__ = [
    "UnitaryParam",
    "IwasawaFactors",
    "iwasawa",
    "lie_basis",
    "ModelFunction",
    "induced_action",
    "casimir_eigenvalue",
    "casimir_apply_fd",
    "matrix_coefficient",
    "spherical_coefficient_radial",
    "spherical_coefficient",
    "radial_parameter",
]


@dataclass(frozen=True)
class UnitaryParam:
    """Principal-series label (weight k, spectral parameter r) in normal form:
    r > 0, or r = 0 with k >= 0.  Complementary series excluded."""

    k: int
    r: float

    def __post_init__(self):
        if not math.isfinite(self.r):
            raise ValueError("r must be finite")
        if self.r < 0 or (self.r == 0 and self.k < 0):
            raise ValueError(
                f"(k, r) = ({self.k}, {self.r}) is not in the normal-form region"
            )


# ---------------------------------------------------------------------------
# Iwasawa decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IwasawaFactors:
    """g = n(x) diag(a, 1/a) kappa with a > 0 and kappa in SU(2)."""

    x: complex
    a: float
    kappa: np.ndarray

    def reconstruct(self) -> np.ndarray:
        n = np.array([[1.0, self.x], [0.0, 1.0]], dtype=complex)
        return n @ np.diag([self.a, 1.0 / self.a]) @ self.kappa


def _iwasawa_batch(g: np.ndarray):
    """Vectorized (a, kappa) of the decomposition; g shape (..., 2, 2)."""
    c = g[..., 1, 0]
    d = g[..., 1, 1]
    norm2 = np.abs(c) ** 2 + np.abs(d) ** 2
    a = 1.0 / np.sqrt(norm2)
    ch = a * c
    dh = a * d
    kappa = np.empty(g.shape, dtype=complex)
    kappa[..., 0, 0] = np.conj(dh)
    kappa[..., 0, 1] = -np.conj(ch)
    kappa[..., 1, 0] = ch
    kappa[..., 1, 1] = dh
    return a, kappa


def iwasawa(g) -> IwasawaFactors:
    """Unique NAK factorization of a determinant-1 complex 2x2 matrix.

    The bottom row of kappa is a * (g21, g22); the top row is completed by
    unitarity and det 1; x is read off from g kappa^(-1).
    """
    g = check_unimodular(g, tol=1e-10)
    if abs(g[1, 0]) == 0.0 and abs(g[1, 1]) == 0.0:
        raise ValueError("singular input: zero bottom row")
    a, kappa = _iwasawa_batch(g)
    x = a * (g[0, 0] * np.conj(kappa[1, 0]) + g[0, 1] * np.conj(kappa[1, 1]))
    # (g kappa^dagger)[0,1] = x / a in the n(x) diag(a,1/a) parametrization
    return IwasawaFactors(x=complex(x), a=float(a), kappa=kappa)


# ---------------------------------------------------------------------------
# Lie algebra basis
# ---------------------------------------------------------------------------


def lie_basis() -> dict:
    """The six basis elements of sl(2, C) as a real Lie algebra."""
    H = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
    Xp = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    Xm = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
    return {
        "H": H,
        "T": 1j * H,
        "X+": Xp,
        "X-": Xm,
        "Y+": 1j * Xp,
        "Y-": -1j * Xm,
    }


def _expm_traceless(u: np.ndarray, t: float) -> np.ndarray:
    """exp(t u) for traceless 2x2 u via Cayley-Hamilton."""
    det = u[0, 0] * u[1, 1] - u[0, 1] * u[1, 0]
    mu = cmath.sqrt(-det)
    z = mu * t
    if abs(z) < 1e-8:
        ch = 1.0 + z * z / 2.0
        sh_over = t * (1.0 + z * z / 6.0)
    else:
        ch = cmath.cosh(z)
        sh_over = cmath.sinh(z) / mu
    return ch * np.eye(2, dtype=complex) + sh_over * u


# ---------------------------------------------------------------------------
# model functions
# ---------------------------------------------------------------------------


@dataclass
class ModelFunction:
    """Finite K-type expansion of a function in the weight-k space.

    ``coeffs`` maps (l, t) to the coefficient of the orthonormal basis
    function sqrt(l+1) D^l_{k,t}; K-types l must satisfy l >= |k| and
    l = k (mod 2).
    """

    weight: int
    coeffs: dict
    tail_mass: float = field(default=0.0, compare=False)

    def __post_init__(self):
        k = self.weight
        for (l, t) in self.coeffs:
            if l < abs(k) or (l - k) % 2 != 0:
                raise ValueError(f"K-type {l} not compatible with weight {k}")
            if abs(t) > l or (l - t) % 2 != 0:
                raise ValueError(f"t = {t} is not a weight of rho_{l}")

    @classmethod
    def basis(cls, k: int, l: int, t: int) -> "ModelFunction":
        return cls(weight=k, coeffs={(l, t): 1.0 + 0.0j})

    @classmethod
    def spherical(cls) -> "ModelFunction":
        return cls(weight=0, coeffs={(0, 0): 1.0 + 0.0j})

    def band_limit(self) -> int:
        return max((l for (l, _) in self.coeffs), default=abs(self.weight))

    def norm_sq(self) -> float:
        return float(sum(abs(c) ** 2 for c in self.coeffs.values()))

    def __call__(self, kappa):
        kappa = np.asarray(kappa, dtype=complex)
        batch = kappa.shape[:-2]
        out = _model_eval(self, kappa.reshape(-1, 2, 2)).reshape(batch)
        if batch == ():
            return complex(out)
        return out


def _model_eval(f: ModelFunction, kappas: np.ndarray) -> np.ndarray:
    """Values of f on a flat (n, 2, 2) SU(2) batch via Euler coordinates.

    kappa = m(alpha) r(beta) m(gamma) gives
    f(kappa) = e^{i k alpha} sum c_{l,t} sqrt(l+1) d^l_{k,t}(beta) e^{i t gamma},
    with the d-rows from the stable eigendecomposition path.
    """
    k = f.weight
    c00 = kappas[:, 0, 0]
    c01 = kappas[:, 0, 1]
    half_sum = np.angle(c00)  # alpha + gamma
    half_diff = np.angle(c01)  # alpha - gamma
    betas = 2.0 * np.arctan2(np.abs(c01), np.abs(c00))
    alpha = 0.5 * (half_sum + half_diff)
    gamma = 0.5 * (half_sum - half_diff)
    out = np.zeros(len(kappas), dtype=complex)
    by_l: dict = {}
    for (l, t), c in f.coeffs.items():
        by_l.setdefault(l, []).append((t, c))
    for l, terms in by_l.items():
        row = _wigner_row(l, k, betas)
        for t, c in terms:
            col = (l - t) // 2
            out += c * math.sqrt(l + 1) * row[:, col] * np.exp(1j * t * gamma)
    return out * np.exp(1j * k * alpha)


def _induced_values(p: UnitaryParam, f: ModelFunction, g: np.ndarray, kappas: np.ndarray):
    """(I(g) f)(kappa) for a batch of kappas, computed pointwise."""
    z = kappas @ g
    a, kp = _iwasawa_batch(z)
    return a ** (2.0 + 2j * p.r) * _model_eval(f, kp.reshape(-1, 2, 2)).reshape(a.shape)


@lru_cache(maxsize=None)
def _rotation_generator_eig(l: int):
    """Eigendecomposition of i * drho_l((X+ - X-)/2) (Hermitian tridiagonal).

    rho_l(r(beta)) = exp(beta J) is then V diag(e^{-i beta lam}) V^dagger,
    which stays accurate at large l where the direct binomial expansion of
    the matrix entries cancels catastrophically.
    """
    ladder = np.array(
        [0.5 * math.sqrt((j + 1) * (l - j)) for j in range(l)]
    )
    H = np.zeros((l + 1, l + 1), dtype=complex)
    for j in range(l):
        H[j + 1, j] = 1j * ladder[j]
        H[j, j + 1] = -1j * ladder[j]
    lam, V = np.linalg.eigh(H)
    return lam, V


def _wigner_row(l: int, t_row: int, betas: np.ndarray) -> np.ndarray:
    """Row t_row of the rotation matrix rho_l(r(beta)), all columns.

    Returns shape (len(betas), l+1) with columns ordered by descending
    weight.  Evaluated through the unitary eigendecomposition of the
    rotation generator, so it is stable for l in the hundreds.
    """
    lam, V = _rotation_generator_eig(l)
    j_row = (l + t_row) // 2  # monomial index of the row weight
    phases = np.exp(-1j * np.outer(np.asarray(betas, dtype=float), lam))
    row_j = (phases * V[j_row, :][None, :]) @ V.conj().T
    # columns in monomial index j; weight order t = l, l-2, ... is j = l..0
    return row_j[:, ::-1].real


def _grid_values(p: UnitaryParam, f: ModelFunction, g, n_beta: int, n_gamma: int):
    """F(beta_j, gamma_s) = (I(g) f)(r(beta) m(gamma)) plus beta weights."""
    cb, wb = np.polynomial.legendre.leggauss(n_beta)
    betas = np.arccos(cb)
    gammas = 2.0 * math.pi * np.arange(n_gamma) / n_gamma
    cos_h = np.cos(betas / 2.0)
    sin_h = np.sin(betas / 2.0)
    eg = np.exp(1j * gammas)
    kap = np.empty((n_beta, n_gamma, 2, 2), dtype=complex)
    kap[..., 0, 0] = cos_h[:, None] * eg[None, :]
    kap[..., 0, 1] = sin_h[:, None] * np.conj(eg)[None, :]
    kap[..., 1, 0] = -sin_h[:, None] * eg[None, :]
    kap[..., 1, 1] = cos_h[:, None] * np.conj(eg)[None, :]
    F = _induced_values(p, f, np.asarray(g, dtype=complex), kap.reshape(-1, 2, 2))
    F = F.reshape(n_beta, n_gamma)
    norm2 = float(np.real(0.5 * np.dot(wb, np.mean(np.abs(F) ** 2, axis=1))))
    return F, betas, wb, norm2


def induced_action(
    p: UnitaryParam,
    f: ModelFunction,
    g,
    degree: int | None = None,
    tail_tol: float = 1e-8,
) -> ModelFunction:
    """I(g) f re-expanded in K-types up to a truncation degree.

    Two-stage adaptivity: the evaluation grid is refined until the L^2 norm
    of the transformed function stabilizes (so no spectral content can alias
    into the kept modes), then K-types are accumulated until the unresolved
    tail drops below ``tail_tol`` times the squared norm.  The output carries
    that tail in ``tail_mass``; TruncationError is raised if the requested or
    maximal degree cannot absorb it.
    """
    g = check_unimodular(g, tol=1e-10)
    if f.weight != p.k:
        raise ValueError("model function weight does not match the parameter")
    k = p.k
    # the computed tail is a difference of O(norm) quantities, so demands
    # below round-off are clamped to what double precision can certify
    eff_tol = max(tail_tol, 5e-14)
    n_beta = max(48, f.band_limit() + 16)
    if degree is not None:
        n_beta = max(n_beta, int(1.6 * degree))
    _, _, _, norm2 = _grid_values(p, f, g, n_beta, 2 * n_beta + 1)
    tail = math.inf
    last_cap = 0
    for _ in range(7):
        # validate the grid: the norm must be stable under refinement before
        # any projection is trusted (otherwise aliased coefficients can pass
        # the tail test while being wrong); the criterion floors at round-off
        n_fine = int(1.5 * n_beta)
        F, betas, wb, norm2_fine = _grid_values(p, f, g, n_fine, 2 * n_fine + 1)
        res_tol = max(1e-2 * tail_tol, 5e-14) * max(norm2_fine, 1e-300)
        resolved = abs(norm2_fine - norm2) <= res_tol
        n_beta, norm2 = n_fine, norm2_fine
        if not resolved:
            continue
        Fhat = np.fft.fft(F, axis=1) / F.shape[1]
        # keep projected types well under the grid Nyquist
        l_cap = degree if degree is not None else (2 * n_beta) // 3
        last_cap = l_cap
        coeffs = {}
        kept = 0.0
        tail = norm2
        for l in range(abs(k), l_cap + 1):
            if (l - k) % 2 != 0:
                continue
            row = _wigner_row(l, k, betas)
            for col, t in enumerate(weights_of(l)):
                mode = Fhat[:, int(t) % F.shape[1]]
                c = math.sqrt(l + 1) * 0.5 * np.dot(wb, row[:, col] * mode)
                coeffs[(l, int(t))] = complex(c)
                kept += abs(c) ** 2
            tail = max(norm2 - kept, 0.0)
            if tail <= eff_tol * max(norm2, 1e-300) and degree is None:
                break
        if norm2 == 0.0 or tail <= eff_tol * max(norm2, 1e-300):
            out = ModelFunction(weight=k, coeffs=coeffs)
            out.tail_mass = tail
            return out
        if degree is not None:
            break
    raise TruncationError(
        f"truncation tail {tail:.3e} above tolerance at degree {last_cap}"
    )


# ---------------------------------------------------------------------------
# Casimir
# ---------------------------------------------------------------------------


def casimir_eigenvalue(p: UnitaryParam) -> float:
    """Eigenvalue of the Casimir element on I_(k,r): -r^2 - 1 + k^2/4."""
    return -p.r**2 - 1.0 + p.k**2 / 4.0


# 4C = H^2 - T^2 + 2(X+X- + X-X+) + 2(Y+Y- + Y-Y+), rewritten as a signed sum
# of squares of single directions so every term is one second derivative:
# (X+ + X-)^2 - (X+ - X-)^2 = 2(X+X- + X-X+), same for Y.
def _casimir_directions():
    b = lie_basis()
    return [
        (b["H"], +1.0),
        (b["T"], -1.0),
        (b["X+"] + b["X-"], +1.0),
        (b["X+"] - b["X-"], -1.0),
        (b["Y+"] + b["Y-"], +1.0),
        (b["Y+"] - b["Y-"], -1.0),
    ]


def _apply_4c_fd(p: UnitaryParam, f: ModelFunction, kappa: np.ndarray, h: float) -> complex:
    f0 = f(kappa)
    total = 0.0 + 0.0j
    for u, sign in _casimir_directions():
        fp = _induced_values(p, f, _expm_traceless(u, h), kappa[None, ...])[0]
        fm = _induced_values(p, f, _expm_traceless(u, -h), kappa[None, ...])[0]
        total += sign * (fp - 2.0 * f0 + fm) / (h * h)
    return total


def casimir_apply_fd(
    p: UnitaryParam,
    f: ModelFunction,
    kappa,
    h: float = 0.05,
    check_tol: float = 5e-3,
) -> complex:
    """Finite-difference application of 4C to f at the point kappa.

    Central second differences along the six one-parameter subgroups,
    Richardson-extrapolated over (h, h/2, h/4).  Raises ValueError when the
    two Richardson levels disagree by more than check_tol relatively (step
    too large).  Equals 4 * casimir_eigenvalue(p) * f(kappa) up to O(h^4).
    """
    kappa = np.asarray(kappa, dtype=complex)
    d1 = _apply_4c_fd(p, f, kappa, h)
    d2 = _apply_4c_fd(p, f, kappa, h / 2.0)
    d3 = _apply_4c_fd(p, f, kappa, h / 4.0)
    r1 = (4.0 * d2 - d1) / 3.0
    r2 = (4.0 * d3 - d2) / 3.0
    scale = max(abs(r2), 1e-12)
    if abs(r1 - r2) > check_tol * scale:
        raise ValueError(
            f"Richardson levels disagree ({abs(r1 - r2) / scale:.2e}); "
            "step too large"
        )
    return r2


# ---------------------------------------------------------------------------
# matrix coefficients
# ---------------------------------------------------------------------------


def matrix_coefficient(
    p: UnitaryParam,
    v: ModelFunction,
    w: ModelFunction,
    g,
    rule: KQuadratureRule | None = None,
) -> complex:
    """<I(g) v, w> in L^2(K) by K-quadrature."""
    g = check_unimodular(g, tol=1e-10)
    if rule is None:
        rule = euler_rule(2 * max(v.band_limit(), w.band_limit()) + 24)
    vals = _induced_values(p, v, g, rule.nodes) * np.conj(w(rule.nodes))
    return complex(np.dot(rule.weights, vals))


def radial_parameter(g) -> float:
    """Cartan radial coordinate of g: t = 2 log s_max for det-1 g."""
    g = np.asarray(g, dtype=complex)
    s = np.linalg.svd(g, compute_uv=False)
    return 2.0 * math.log(float(s[0]))


def spherical_coefficient_radial(r: float, t: float) -> float:
    """Spherical matrix coefficient at the radial point t (K-fixed vector).

    Bi-M-invariance collapses the K-integral to one dimension,

        Phi_r(t) = 1/2 int_{-1}^{1} [(1-c)/2 e^t + (1+c)/2 e^{-t}]^{-(1+ir)} dc,

    and the integrand is a pure power of an affine function of c, so the
    integral evaluates exactly to sin(r t) / (r sinh t).  Real for real r;
    the general matrix_coefficient path reproduces it by K-quadrature.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    if t == 0.0:
        return 1.0
    if r == 0.0:
        return t / math.sinh(t)
    return math.sin(r * t) / (r * math.sinh(t))


def spherical_coefficient(r: float, g) -> float:
    """Spherical coefficient of I_(0,r) at g, reduced via singular values."""
    return spherical_coefficient_radial(r, radial_parameter(g))
