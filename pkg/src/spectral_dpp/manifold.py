"""Geometry of the model manifolds: circle, flat torus, round 2-sphere.

Points are plain numpy arrays: an angle vector in [0, 2*pi)^m for the
circle (m = 1) and flat torus, a unit 3-vector for the sphere.  Tangent
vectors are coefficient vectors in a declared orthonormal frame at the
base point, so the metric there is the identity and tangent norms are
Euclidean norms of the coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * np.pi

CIRCLE = "circle"
TORUS = "torus"
SPHERE2 = "sphere2"


class CutLocusError(ValueError):
    """Logarithm requested at or beyond the cut locus."""


@dataclass(frozen=True)
class ManifoldModel:
    kind: str
    dim: int
    volume: float
    injectivity_radius: float

    @property
    def coord_dim(self) -> int:
        """Length of a point's coordinate array (3 for the embedded sphere)."""
        return 3 if self.kind == SPHERE2 else self.dim

    @property
    def name(self) -> str:
        if self.kind == TORUS:
            return f"torus:{self.dim}"
        return self.kind


def circle() -> ManifoldModel:
    return ManifoldModel(CIRCLE, 1, TWO_PI, np.pi)


def flat_torus(m: int) -> ManifoldModel:
    if not 1 <= m <= 3:
        raise ValueError(f"torus dimension must be 1..3, got {m!r}")
    return ManifoldModel(TORUS, m, TWO_PI**m, np.pi)


def sphere2() -> ManifoldModel:
    return ManifoldModel(SPHERE2, 2, 4.0 * np.pi, np.pi)


def from_name(name: str) -> ManifoldModel:
    """Parse 'circle', 'torus:m' or 'sphere2'."""
    if name == CIRCLE:
        return circle()
    if name == SPHERE2:
        return sphere2()
    if name.startswith("torus"):
        _, _, dim = name.partition(":")
        return flat_torus(int(dim) if dim else 2)
    raise ValueError(f"unknown manifold {name!r}")


def validate_point(model: ManifoldModel, x) -> np.ndarray:
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape != (model.coord_dim,):
        raise ValueError(
            f"point for {model.name} must have {model.coord_dim} coordinates")
    if model.kind == SPHERE2:
        if abs(np.linalg.norm(x) - 1.0) > 1e-12:
            raise ValueError("sphere point must be a unit 3-vector")
        return x
    return np.mod(x, TWO_PI)


def _wrap(delta: np.ndarray) -> np.ndarray:
    """Reduce angle differences to the principal range (-pi, pi].

    Uses round-to-nearest so that wrapping commutes exactly with sign
    flips, keeping the distance symmetric to the last bit.
    """
    out = delta - TWO_PI * np.round(delta / TWO_PI)
    out[out == -np.pi] = np.pi
    return out


def frame_at(model: ManifoldModel, p) -> np.ndarray:
    """Orthonormal tangent frame at p, rows = frame vectors.

    Flat models use the coordinate frame.  On the sphere the first frame
    vector is the coordinate axis least aligned with p, orthogonalized
    against p (ties broken by axis index), and the second completes a
    right-handed triple.
    """
    p = validate_point(model, p)
    if model.kind != SPHERE2:
        return np.eye(model.dim)
    axis = int(np.argmin(np.abs(p)))
    e1 = np.zeros(3)
    e1[axis] = 1.0
    e1 = e1 - np.dot(e1, p) * p
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(p, e1)
    return np.vstack([e1, e2])


def exp_map(model: ManifoldModel, p, v) -> np.ndarray:
    """Endpoint of the geodesic from p with initial frame coefficients v."""
    p = validate_point(model, p)
    v = np.asarray(v, dtype=float)
    if v.shape != (model.dim,):
        raise ValueError(f"tangent vector must have {model.dim} components")
    if model.kind != SPHERE2:
        return np.mod(p + v, TWO_PI)
    r = np.linalg.norm(v)
    if r == 0.0:
        return p.copy()
    direction = (v @ frame_at(model, p)) / r
    return np.cos(r) * p + np.sin(r) * direction


def distance(model: ManifoldModel, x, y) -> float:
    """Geodesic distance between two points."""
    x = validate_point(model, x)
    y = validate_point(model, y)
    if model.kind == SPHERE2:
        return float(np.arccos(np.clip(np.dot(x, y), -1.0, 1.0)))
    return float(np.linalg.norm(_wrap(x - y)))


def log_map(model: ManifoldModel, p, x) -> np.ndarray:
    """Frame coefficients of the geodesic from p to x.

    Requires distance(p, x) strictly below the injectivity radius.
    """
    p = validate_point(model, p)
    x = validate_point(model, x)
    if model.kind != SPHERE2:
        delta = _wrap(x - p)
        if np.linalg.norm(delta) >= model.injectivity_radius:
            raise CutLocusError("point at or beyond the cut locus of the base")
        return delta
    d = distance(model, p, x)
    if d >= model.injectivity_radius:
        raise CutLocusError("point at or beyond the cut locus of the base")
    if d < 1e-15:
        return np.zeros(2)
    w = x - np.dot(x, p) * p
    w_norm = np.linalg.norm(w)
    return d * (frame_at(model, p) @ w) / w_norm


@dataclass(frozen=True)
class TangentChart:
    """Scaled exponential chart: base point, frame, window radius, scale.

    Chart coordinates u correspond to the manifold point
    exp_p(u / lam); the window keeps |u| / lam inside the open ball of
    radius epsilon, inside the injectivity radius.
    """
    model: ManifoldModel
    base_point: np.ndarray
    frame: np.ndarray
    epsilon: float
    lam: float

    def __post_init__(self):
        object.__setattr__(self, "base_point",
                           validate_point(self.model, self.base_point))
        if not 0.0 < self.epsilon < self.model.injectivity_radius:
            raise ValueError("epsilon must lie in (0, injectivity radius)")
        if self.lam <= 0.0:
            raise ValueError("scale must be positive")
        gram = self.frame @ self.frame.T
        if not np.allclose(gram, np.eye(self.model.dim), atol=1e-12):
            raise ValueError("frame must be orthonormal")

    @classmethod
    def at(cls, model: ManifoldModel, p, lam: float,
           epsilon: float | None = None) -> "TangentChart":
        if epsilon is None:
            epsilon = model.injectivity_radius / 2.0
        return cls(model, np.asarray(p, dtype=float), frame_at(model, p),
                   float(epsilon), float(lam))

    def to_manifold(self, u) -> np.ndarray:
        """Manifold point of chart coordinates u."""
        u = np.asarray(u, dtype=float)
        return exp_map(self.model, self.base_point, u / self.lam)

    def contains(self, u) -> bool:
        """Whether u / lam lies in the open epsilon-ball."""
        return bool(np.linalg.norm(u) / self.lam < self.epsilon)


def scaled_distance(model: ManifoldModel, chart: TangentChart, u, v) -> float:
    """lam * d_g(exp_p(u/lam), exp_p(v/lam)); tends to |u - v| as lam grows."""
    return chart.lam * distance(model, chart.to_manifold(u), chart.to_manifold(v))


def uniform_sample(model: ManifoldModel, rng, size: int | None = None) -> np.ndarray:
    """Draw points from the normalized Riemannian volume.

    Returns one point when size is None, else an array of shape
    (size, coord_dim).
    """
    n = 1 if size is None else int(size)
    if model.kind == SPHERE2:
        g = rng.normal(size=(n, 3))
        pts = g / np.linalg.norm(g, axis=1, keepdims=True)
    else:
        pts = rng.uniform(0.0, TWO_PI, size=(n, model.dim))
    return pts[0] if size is None else pts
