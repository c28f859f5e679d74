"""Irreducible SU(2) representations in the weight basis, Haar quadrature,
and the truncated delta at the identity.

The (m+1)-dimensional representation rho_m is realized on degree-m
homogeneous polynomials in (z1, z2) acting by p(z) -> p(g^T z).  Basis
vectors are the normalized monomials ordered by descending torus weight
t = m, m-2, ..., -m, so diag(e^{i theta}, e^{-i theta}) acts by e^{i t theta}
on index t and rho_1 is the defining representation on the nose.  All matrix
entries are polynomials in the entries of g, so the same code provides the
holomorphic extension to SL(2, C) used by the principal-series module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

__all__ = [
    "check_su2",
    "check_unimodular",
    "torus_element",
    "euler_element",
    "random_su2",
    "weight_index",
    "weights_of",
    "rep_matrix",
    "psi_star",
    "ktype_embed",
    "KQuadratureRule",
    "euler_rule",
    "k_quadrature",
    "DeltaTruncation",
    "truncated_delta",
]


def check_unimodular(g, tol: float = 1e-12) -> np.ndarray:
    """Validate a 2x2 complex matrix with determinant 1."""
    g = np.asarray(g, dtype=complex)
    if g.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {g.shape}")
    if not np.all(np.isfinite(g)):
        raise ValueError("matrix entries must be finite")
    det = g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]
    if abs(det - 1.0) > tol:
        raise ValueError(f"determinant {det} is not 1 within {tol}")
    return g


def check_su2(g, tol: float = 1e-12) -> np.ndarray:
    """Validate an SU(2) element (unitary, determinant 1)."""
    g = check_unimodular(g, tol)
    if np.max(np.abs(g @ g.conj().T - np.eye(2))) > tol:
        raise ValueError("matrix is not unitary within tolerance")
    return g


def torus_element(theta: float) -> np.ndarray:
    """m(theta) = diag(e^{i theta}, e^{-i theta})."""
    return np.diag([np.exp(1j * theta), np.exp(-1j * theta)])


def euler_element(alpha: float, beta: float, gamma: float) -> np.ndarray:
    """SU(2) element m(alpha) r(beta) m(gamma) in Euler coordinates."""
    cb, sb = math.cos(beta / 2.0), math.sin(beta / 2.0)
    r = np.array([[cb, sb], [-sb, cb]], dtype=complex)
    return torus_element(alpha) @ r @ torus_element(gamma)


def random_su2(rng: np.random.Generator) -> np.ndarray:
    """Haar-ish random SU(2) element (QR of a complex Gaussian)."""
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    q = q @ np.diag(np.conj(r.diagonal() / np.abs(r.diagonal())))
    q /= np.sqrt(np.linalg.det(q))
    return q


def weights_of(m: int) -> np.ndarray:
    """Torus weights of rho_m in basis order: m, m-2, ..., -m."""
    return np.arange(m, -m - 1, -2)


def weight_index(m: int, t: int) -> int:
    """Basis index of the weight-t vector in rho_m."""
    if (m - t) % 2 != 0 or abs(t) > m:
        raise ValueError(f"t = {t} is not a weight of rho_{m}")
    return (m - t) // 2


@lru_cache(maxsize=None)
def _sqrt_factorials(m: int) -> np.ndarray:
    return np.array([math.sqrt(math.factorial(i) * math.factorial(m - i)) for i in range(m + 1)])


@lru_cache(maxsize=None)
def _binom_table(m: int) -> np.ndarray:
    tbl = np.zeros((m + 1, m + 1))
    for n in range(m + 1):
        for k in range(n + 1):
            tbl[n, k] = math.comb(n, k)
    return tbl


def rep_matrix(m: int, g) -> np.ndarray:
    """Matrix of rho_m(g) in the weight basis (rows/cols ordered t = m..-m).

    ``g`` may be a single 2x2 array or a batch of shape (..., 2, 2); the
    result has shape (..., m+1, m+1).  The entries are polynomials in the
    entries of g (holomorphic extension), multiplicative in g, and unitary
    when g is in SU(2).
    """
    if m < 0:
        raise ValueError("m must be a non-negative integer")
    g = np.asarray(g, dtype=complex)
    if g.shape[-2:] != (2, 2):
        raise ValueError(f"expected trailing 2x2 shape, got {g.shape}")
    batch = g.shape[:-2]
    a = g[..., 0, 0]
    b = g[..., 0, 1]
    c = g[..., 1, 0]
    d = g[..., 1, 1]
    # powers up to m, shape (m+1,) + batch
    pows = np.empty((4, m + 1) + batch, dtype=complex)
    for idx, base in enumerate((a, b, c, d)):
        pows[idx, 0] = 1.0
        for e in range(1, m + 1):
            pows[idx, e] = pows[idx, e - 1] * base
    binom = _binom_table(m)
    norms = _sqrt_factorials(m)
    out = np.zeros(batch + (m + 1, m + 1), dtype=complex)
    # M[i, j]: coefficient of z1^i z2^(m-i) in (a z1 + c z2)^j (b z1 + d z2)^(m-j)
    for j in range(m + 1):
        for i in range(m + 1):
            s_lo = max(0, i - (m - j))
            s_hi = min(i, j)
            if s_lo > s_hi:
                continue
            acc = 0.0
            for s in range(s_lo, s_hi + 1):
                term = (
                    binom[j, s]
                    * binom[m - j, i - s]
                    * pows[0, s]
                    * pows[2, j - s]
                    * pows[1, i - s]
                    * pows[3, m - j - i + s]
                )
                acc = acc + term
            # weight-ordered indices: row t=m-2r <-> z1-degree i=m-r
            out[..., m - i, m - j] = acc * (norms[i] / norms[j])
    return out


def psi_star(m: int, j: int, g) -> complex:
    """Dual matrix coefficient <rho_m^*(g) v_j^*, v_{-m}^*>.

    The contragredient acts in the dual basis by the transpose inverse of
    rho_m(g), which for g in SU(2) is the entrywise conjugate; psi_star at the
    identity is 1 for j = -m and 0 otherwise.
    """
    g = np.asarray(g, dtype=complex)
    D = rep_matrix(m, g)
    row = weight_index(m, -m)
    col = weight_index(m, j)
    return np.conj(D[..., row, col])


def ktype_embed(m: int, v):
    """Embedding of rho_m into functions on K.

    Returns f with f(k) = (m+1)^(1/2) <rho_m(k) v, v_m>; unit vectors map to
    unit-norm functions in L^2(K), and left translation by m(theta)
    multiplies f by e^{i m theta}.  The returned callable accepts a single
    element or a batch.
    """
    v = np.asarray(v, dtype=complex)
    if v.shape != (m + 1,):
        raise ValueError(f"coefficient vector must have length {m + 1}")
    root = math.sqrt(m + 1)
    top = weight_index(m, m)

    def f(k):
        D = rep_matrix(m, k)
        return root * np.tensordot(D[..., top, :], v, axes=([-1], [0]))

    return f


# ---------------------------------------------------------------------------
# quadrature on K
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KQuadratureRule:
    """Quadrature nodes/weights for the Haar probability measure on SU(2).

    Exact (to round-off) on matrix coefficients of rho_l for
    l <= exactness_degree.  The Euler-angle structure (trapezoid in alpha and
    gamma, Gauss-Legendre in cos beta) is kept alongside the flattened node
    list for factorized fast paths.
    """

    nodes: np.ndarray
    weights: np.ndarray
    exactness_degree: int
    alphas: np.ndarray = field(repr=False, default=None)
    gammas: np.ndarray = field(repr=False, default=None)
    beta_nodes: np.ndarray = field(repr=False, default=None)
    beta_weights: np.ndarray = field(repr=False, default=None)


def euler_rule(exactness_degree: int) -> KQuadratureRule:
    """Build the Euler-angle product rule of a given exactness degree.

    A matrix coefficient of rho_l is e^{i t alpha} d^l(beta) e^{i t' gamma}
    with |t|, |t'| <= l and d^l polynomial of degree <= l in cos beta, so
    uniform grids with N+1 points in alpha, gamma and an (N//2+1)-point
    Gauss-Legendre rule in cos beta integrate every coefficient with
    l <= N exactly.
    """
    n = int(exactness_degree)
    if n < 0:
        raise ValueError("exactness_degree must be >= 0")
    n_ang = n + 1
    n_beta = n // 2 + 1
    alphas = 2.0 * math.pi * np.arange(n_ang) / n_ang
    gammas = 2.0 * math.pi * np.arange(n_ang) / n_ang
    cb, wb = np.polynomial.legendre.leggauss(n_beta)
    betas = np.arccos(cb)
    # node matrices m(alpha) r(beta) m(gamma), flattened
    ea = np.exp(1j * alphas)
    eg = np.exp(1j * gammas)
    cos_h = np.cos(betas / 2.0)
    sin_h = np.sin(betas / 2.0)
    A, B, G = np.meshgrid(np.arange(n_ang), np.arange(n_beta), np.arange(n_ang), indexing="ij")
    nodes = np.empty((n_ang, n_beta, n_ang, 2, 2), dtype=complex)
    nodes[..., 0, 0] = ea[A] * cos_h[B] * eg[G]
    nodes[..., 0, 1] = ea[A] * sin_h[B] * np.conj(eg[G])
    nodes[..., 1, 0] = -np.conj(ea[A]) * sin_h[B] * eg[G]
    nodes[..., 1, 1] = np.conj(ea[A]) * cos_h[B] * np.conj(eg[G])
    weights = np.broadcast_to(
        (wb / 2.0)[None, :, None] / (n_ang * n_ang), (n_ang, n_beta, n_ang)
    )
    return KQuadratureRule(
        nodes=nodes.reshape(-1, 2, 2),
        weights=np.ascontiguousarray(weights.reshape(-1)),
        exactness_degree=n,
        alphas=alphas,
        gammas=gammas,
        beta_nodes=betas,
        beta_weights=wb,
    )


def k_quadrature(f, rule: KQuadratureRule, batched: bool = True) -> complex:
    """sum_i w_i f(k_i) over the rule's nodes.

    With ``batched=True`` (default) the integrand is called once with the
    full (n, 2, 2) node array and must return an (n,) array; otherwise it is
    called one node at a time.
    """
    if batched:
        vals = np.asarray(f(rule.nodes))
    else:
        vals = np.array([f(k) for k in rule.nodes])
    return complex(np.dot(rule.weights, vals))


# ---------------------------------------------------------------------------
# truncated delta
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DeltaTruncation:
    """Truncation data for the delta expansion at weight k: K-types l <= N."""

    weight: int
    order: int

    def __post_init__(self):
        if self.order < abs(self.weight):
            raise ValueError("order must be >= |weight|")
        if (self.order - self.weight) % 2 != 0:
            raise ValueError("order must have the parity of the weight")

    def ktypes(self):
        return range(abs(self.weight), self.order + 1, 2)


def truncated_delta(d: DeltaTruncation):
    """The truncated delta delta_N(k) = sum_l (l+1) beta_l(k).

    beta_l is the dual diagonal matrix coefficient on the unit vector of
    M-eigenvalue e^{+i k theta} in rho_l^* (basis vector v_{-k}^*); the
    overall phase of that vector cancels in beta_l.  delta_N transforms with
    the character e^{+i k theta} under both left and right translation by
    m(theta), and pairs bilinearly against band-limited functions of left
    weight -k to reproduce their value at the identity.
    """
    k = d.weight

    def delta(kap):
        kap = np.asarray(kap, dtype=complex)
        batch = kap.shape[:-2]
        out = np.zeros(batch, dtype=complex)
        for l in d.ktypes():
            r = weight_index(l, -k)
            D = rep_matrix(l, kap)
            out = out + (l + 1) * np.conj(D[..., r, r])
        if batch == ():
            return complex(out)
        return out

    return delta
