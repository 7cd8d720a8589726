"""Truncated eigenbasis of the square-root Laplacian on the model manifolds.

The basis is real (cosine/sine pairs, real spherical harmonics), ordered
by frequency and then by label, with the cutoff applied inclusively to
the stored frequencies so a whole eigenspace is always kept together.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .manifold import CIRCLE, SPHERE2, TORUS, ManifoldModel, validate_point

SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class SpectralBasis:
    """Immutable container for one truncated eigenbasis."""
    model: ManifoldModel
    cutoff: float
    entries: tuple          # ((sqrt_eigenvalue, label), ...)
    _plan: dict = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def sqrt_eigenvalues(self) -> np.ndarray:
        return np.array([lam for lam, _ in self.entries])


def _circle_kmax(lam: float) -> int:
    return int(math.floor(lam))


def _torus_reps(m: int, lam: float) -> list[tuple[int, ...]]:
    """One lattice representative per +-k pair, first nonzero entry positive."""
    kmax = int(math.floor(lam))
    reps = []
    for k in np.ndindex(*([2 * kmax + 1] * m)):
        vec = tuple(int(c) - kmax for c in k)
        kk = sum(c * c for c in vec)
        if kk == 0 or math.sqrt(kk) > lam:
            continue
        first = next(c for c in vec if c != 0)
        if first > 0:
            reps.append(vec)
    reps.sort(key=lambda v: (sum(c * c for c in v), v))
    return reps


def _sphere_lmax(lam: float) -> int:
    l = 0
    while math.sqrt((l + 1) * (l + 2)) <= lam:
        l += 1
    return l


def count(model: ManifoldModel, lam: float) -> int:
    """Number of eigenvalues of the square-root Laplacian at most lam."""
    if lam < 0:
        raise ValueError("cutoff must be non-negative")
    if model.kind == CIRCLE:
        return 1 + 2 * _circle_kmax(lam)
    if model.kind == TORUS:
        return 1 + 2 * len(_torus_reps(model.dim, lam))
    return (_sphere_lmax(lam) + 1) ** 2


def build_basis(model: ManifoldModel, lam: float) -> SpectralBasis:
    if lam < 0:
        raise ValueError("cutoff must be non-negative")
    if model.kind == CIRCLE:
        kmax = _circle_kmax(lam)
        entries = [(0.0, ("const",))]
        for k in range(1, kmax + 1):
            entries.append((float(k), (k, "cos")))
            entries.append((float(k), (k, "sin")))
        plan = {"kmax": kmax}
    elif model.kind == TORUS:
        reps = _torus_reps(model.dim, lam)
        entries = [(0.0, ("const",))]
        for vec in reps:
            freq = math.sqrt(sum(c * c for c in vec))
            entries.append((freq, (vec, "cos")))
            entries.append((freq, (vec, "sin")))
        plan = {"reps": np.array(reps, dtype=float).reshape(len(reps), model.dim)}
    else:
        lmax = _sphere_lmax(lam)
        entries = []
        for l in range(lmax + 1):
            entries.append((math.sqrt(l * (l + 1)), (l, 0)))
            for m in range(1, l + 1):
                entries.append((math.sqrt(l * (l + 1)), (l, 2 * m - 1)))
                entries.append((math.sqrt(l * (l + 1)), (l, 2 * m)))
        plan = {"lmax": lmax, **_legendre_tables(lmax)}
    return SpectralBasis(model, float(lam), tuple(entries), plan)


def _legendre_tables(lmax: int) -> dict:
    """Recurrence coefficients for fully normalized associated Legendre."""
    a = np.zeros((lmax + 1, lmax + 1))
    b = np.zeros((lmax + 1, lmax + 1))
    diag = np.zeros(lmax + 1)
    acc = 1.0
    for m in range(lmax + 1):
        if m > 0:
            acc *= (2 * m + 1) / (2 * m)
        diag[m] = math.sqrt(acc / (4.0 * math.pi))
        for l in range(m + 1, lmax + 1):
            a[l, m] = math.sqrt((4 * l * l - 1.0) / (l * l - m * m))
            if l > m + 1:
                b[l, m] = -math.sqrt(
                    (2 * l + 1.0) * ((l - 1.0) ** 2 - m * m)
                    / ((2 * l - 3.0) * (l * l - m * m)))
    return {"leg_a": a, "leg_b": b, "leg_diag": diag}


def eval_basis_many(basis: SpectralBasis, pts) -> np.ndarray:
    """Evaluate all basis functions at each point; shape (npts, N)."""
    pts = np.asarray(pts, dtype=float)
    if pts.ndim == 1:
        pts = pts[None, :]
    model = basis.model
    npts = pts.shape[0]
    out = np.empty((npts, basis.size))
    if model.kind == CIRCLE:
        kmax = basis._plan["kmax"]
        theta = pts[:, 0]
        out[:, 0] = 1.0 / math.sqrt(2.0 * math.pi)
        if kmax:
            phases = np.outer(theta, np.arange(1, kmax + 1))
            out[:, 1::2] = np.cos(phases) / SQRT_PI
            out[:, 2::2] = np.sin(phases) / SQRT_PI
    elif model.kind == TORUS:
        reps = basis._plan["reps"]
        norm = math.sqrt(2.0 / model.volume)
        out[:, 0] = 1.0 / math.sqrt(model.volume)
        if len(reps):
            phases = pts @ reps.T
            out[:, 1::2] = np.cos(phases) * norm
            out[:, 2::2] = np.sin(phases) * norm
    else:
        _eval_sphere(basis, pts, out)
    return out


def _eval_sphere(basis: SpectralBasis, pts: np.ndarray, out: np.ndarray) -> None:
    plan = basis._plan
    lmax = plan["lmax"]
    a, b, diag = plan["leg_a"], plan["leg_b"], plan["leg_diag"]
    z = pts[:, 2]
    s = np.sqrt(np.maximum(1.0 - z * z, 0.0))
    phi = np.arctan2(pts[:, 1], pts[:, 0])
    sqrt2 = math.sqrt(2.0)
    pmm_raw = np.ones_like(z)    # s^m, built up incrementally
    for m in range(lmax + 1):
        if m > 0:
            pmm_raw = pmm_raw * s
        cos_m = np.cos(m * phi)
        sin_m = np.sin(m * phi)
        p_prev2 = np.zeros_like(z)
        p_prev = diag[m] * pmm_raw
        for l in range(m, lmax + 1):
            if l == m:
                p = p_prev
            else:
                p = a[l, m] * z * p_prev + b[l, m] * p_prev2
                p_prev2, p_prev = p_prev, p
            base = l * l
            if m == 0:
                out[:, base] = p
            else:
                out[:, base + 2 * m - 1] = sqrt2 * p * cos_m
                out[:, base + 2 * m] = sqrt2 * p * sin_m


def eval_basis(basis: SpectralBasis, x) -> np.ndarray:
    """Evaluate all basis functions at one point; shape (N,)."""
    x = validate_point(basis.model, x)
    return eval_basis_many(basis, x[None, :])[0]
