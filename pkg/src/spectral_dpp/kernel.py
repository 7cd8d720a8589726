"""Kernels: spectral projection, its scaled chart version, and the
band-limited limit kernel together with the Fourier ball/sphere identities.

Charts always carry orthonormal frames, so chart coordinates see the flat
metric and the limit kernel takes its Euclidean form.  Non-trivial metric
pairings enter only through the explicit inverse-metric matrices of
`fourier_ball` / `fourier_sphere`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .manifold import SPHERE2, ManifoldModel, TangentChart
from .spectrum import SpectralBasis, eval_basis, eval_basis_many
from .specfun import f_alpha


@dataclass(frozen=True)
class KernelTable:
    """Dense table of kernel values over a u-grid x v-grid."""
    u_points: np.ndarray
    v_points: np.ndarray
    values: np.ndarray
    meta: dict = field(default_factory=dict)


def projection_kernel(basis: SpectralBasis, x, y) -> float:
    """Sum of phi_i(x) * phi_i(y) over the truncated basis."""
    return float(eval_basis(basis, x) @ eval_basis(basis, y))


def projection_gram(basis: SpectralBasis, pts) -> np.ndarray:
    """Matrix of projection-kernel values over a point list."""
    feats = eval_basis_many(basis, np.asarray(pts, dtype=float))
    return feats @ feats.T


def scaled_kernel(basis: SpectralBasis, chart: TangentChart, u, v) -> float:
    """Chart kernel lam^-m * E(exp_p(u/lam), exp_p(v/lam)), windowed.

    Returns 0 when either scaled point leaves the open epsilon-ball.
    """
    if basis.cutoff != chart.lam:
        raise ValueError("basis cutoff and chart scale must agree")
    if not (chart.contains(u) and chart.contains(v)):
        return 0.0
    m = chart.model.dim
    x = chart.to_manifold(u)
    y = chart.to_manifold(v)
    return chart.lam ** (-m) * projection_kernel(basis, x, y)


def scaled_kernel_matrix(basis: SpectralBasis, chart: TangentChart,
                         us, vs=None) -> np.ndarray:
    """Vectorized scaled kernel over chart coordinate lists."""
    if basis.cutoff != chart.lam:
        raise ValueError("basis cutoff and chart scale must agree")
    us = np.asarray(us, dtype=float)
    if us.ndim == 1:
        us = us[:, None]
    vs = us if vs is None else np.asarray(vs, dtype=float)
    if vs.ndim == 1:
        vs = vs[:, None]
    m = chart.model.dim
    inside_u = np.linalg.norm(us, axis=1) / chart.lam < chart.epsilon
    inside_v = np.linalg.norm(vs, axis=1) / chart.lam < chart.epsilon
    fu = eval_basis_many(basis, np.array([chart.to_manifold(u) for u in us]))
    fv = eval_basis_many(basis, np.array([chart.to_manifold(v) for v in vs]))
    out = (fu @ fv.T) * chart.lam ** (-m)
    out *= np.outer(inside_u, inside_v)
    return out


def universal_kernel(m: int, u, v) -> float:
    """Limit kernel (2 pi)^(-m/2) * F_{m/2}(|u - v|) on R^m."""
    if not 1 <= m <= 8:
        raise ValueError(f"dimension must be in 1..8, got {m!r}")
    u = np.atleast_1d(np.asarray(u, dtype=float))
    v = np.atleast_1d(np.asarray(v, dtype=float))
    if u.shape != (m,) or v.shape != (m,):
        raise ValueError(f"expected coordinate vectors of length {m}")
    r = float(np.linalg.norm(u - v))
    return (2.0 * math.pi) ** (-m / 2.0) * f_alpha(m / 2.0, r)


def _spd_sqrt_norm(g_inverse, eta) -> float:
    """Metric norm |eta|_g = |g^(-1/2) eta| through the SPD square root."""
    g_inv = np.asarray(g_inverse, dtype=float)
    eta = np.atleast_1d(np.asarray(eta, dtype=float))
    if g_inv.ndim != 2 or g_inv.shape[0] != g_inv.shape[1]:
        raise ValueError("inverse metric must be a square matrix")
    if g_inv.shape[0] != eta.shape[0]:
        raise ValueError("inverse metric and vector dimensions disagree")
    if np.abs(g_inv - g_inv.T).max() > 1e-12:
        raise ValueError("inverse metric must be symmetric")
    w, q = np.linalg.eigh(g_inv)
    if w.min() <= 0.0:
        raise ValueError("inverse metric must be positive definite")
    root = (q * np.sqrt(w)) @ q.T
    return float(np.linalg.norm(root @ eta))


def fourier_ball(g_inverse, eta) -> float:
    """Normalized Fourier transform of the unit metric ball: F_{m/2}(|eta|_g)."""
    g_inv = np.asarray(g_inverse, dtype=float)
    m = g_inv.shape[0] if g_inv.ndim == 2 else 0
    return f_alpha(m / 2.0, _spd_sqrt_norm(g_inverse, eta))


def fourier_sphere(g_inverse, eta) -> float:
    """Normalized Fourier transform of the unit metric sphere: F_{(m-2)/2}."""
    g_inv = np.asarray(g_inverse, dtype=float)
    m = g_inv.shape[0] if g_inv.ndim == 2 else 0
    if m < 2:
        raise ValueError("surface measure needs dimension at least 2")
    return f_alpha((m - 2) / 2.0, _spd_sqrt_norm(g_inverse, eta))


def chart_density(chart: TangentChart, u) -> float:
    """Density of the chart's scaled pull-back volume against Lebesgue.

    Identically 1 on the flat models; on the sphere it is the polar
    Jacobian sin(r/lam) / (r/lam) at chart radius r.
    """
    if chart.model.kind != SPHERE2:
        return 1.0
    r = float(np.linalg.norm(u)) / chart.lam
    if r == 0.0:
        return 1.0
    return math.sin(r) / r


def tabulate(kernel_fn, u_list, v_list, meta: dict | None = None) -> KernelTable:
    """Evaluate a two-argument kernel on the product grid."""
    u_arr = np.atleast_2d(np.asarray(u_list, dtype=float))
    v_arr = np.atleast_2d(np.asarray(v_list, dtype=float))
    if u_arr.size == 0 or v_arr.size == 0:
        raise ValueError("grid must be nonempty")
    values = np.empty((u_arr.shape[0], v_arr.shape[0]))
    for i, u in enumerate(u_arr):
        for j, v in enumerate(v_arr):
            values[i, j] = kernel_fn(u, v)
    return KernelTable(u_arr, v_arr, values, dict(meta or {}))
