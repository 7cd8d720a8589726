"""Exact sampling of the rank-N projection DPP and its chart pull-back.

The sampler is the sequential chain rule for projection kernels: with the
feature map Phi(x) = (phi_0(x), ..., phi_{N-1}(x)), the i-th point is
drawn from the residual density

    (|Phi(x)|^2 - sum_j <Phi(x), e_j>^2) / (N - i)

with respect to the Riemannian volume, where {e_j} spans the features of
the points accepted so far.  On the homogeneous models |Phi(x)|^2 is the
constant N / vol(M), which makes uniform proposals with that envelope
exact; the acceptance rate at step i is then (N - i) / N, so a full
configuration costs about N * H_N proposals.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .manifold import (ManifoldModel, TangentChart, distance, frame_at,
                       log_map, uniform_sample)
from .spectrum import SpectralBasis, eval_basis_many


class EnvelopeViolationError(RuntimeError):
    """A residual density exceeded the rejection envelope."""


class DegenerateFeatureError(RuntimeError):
    """Accepted feature vector was numerically dependent on earlier ones."""


class RandomStream:
    """Reproducible per-replica random stream.

    The underlying generator is keyed on the (seed, replica_index) pair,
    so replicas can run in any order or in parallel and still reproduce.
    Streams are single-owner: never share one across replicas.
    """

    def __init__(self, seed: int, replica_index: int = 0):
        self.seed = int(seed)
        self.replica_index = int(replica_index)
        self._gen = np.random.default_rng(
            np.random.SeedSequence([self.seed, self.replica_index]))

    def uniform(self, low=0.0, high=1.0, size=None):
        return self._gen.uniform(low, high, size)

    def normal(self, size=None):
        return self._gen.standard_normal(size)

    def random(self, size=None):
        return self._gen.random(size)


@dataclass(frozen=True)
class PointConfiguration:
    """One realization, either on the manifold or in chart coordinates."""
    space: str                  # "manifold" | "chart"
    points: np.ndarray          # (n, coord_dim)
    replica_index: int
    lam: float
    model_name: str

    def __len__(self) -> int:
        return self.points.shape[0]


def sup_feature_norm(basis: SpectralBasis, rng: RandomStream | None = None,
                     n_check: int = 10_000) -> float:
    """Supremum of |Phi(x)|^2, which is N / vol(M) on these models.

    A random search over n_check points guards the identity; exceeding it
    by more than 1e-9 relative trips an internal-consistency error.
    """
    sup = basis.size / basis.model.volume
    if n_check:
        rng = rng or RandomStream(0x5F3759DF, 0)
        pts = uniform_sample(basis.model, rng, size=n_check)
        norms = (eval_basis_many(basis, pts) ** 2).sum(axis=1)
        if norms.max() > sup * (1.0 + 1e-9):
            raise EnvelopeViolationError(
                f"feature norm {norms.max():.17g} exceeds envelope {sup:.17g}")
    return sup


def sample_dpp(basis: SpectralBasis, model: ManifoldModel, rng: RandomStream,
               sup_norm: float | None = None) -> PointConfiguration:
    """Draw one exact realization of the projection DPP.

    Proposals come in batches from the uniform distribution; the first
    acceptance in stream order is kept, so the draw is identical to the
    one-at-a-time rejection loop for a fixed stream.
    """
    if basis.size < 1:
        raise ValueError("basis must be nonempty")
    n = basis.size
    sup = sup_feature_norm(basis, rng=None, n_check=0) if sup_norm is None else sup_norm
    ortho = np.zeros((n, n))    # accepted feature directions, columns 0..i-1
    points = np.empty((n, model.coord_dim))
    for i in range(n):
        batch = max(8, int(2.5 * n / (n - i)))
        accepted = None
        while accepted is None:
            props = uniform_sample(model, rng, size=batch)
            feats = eval_basis_many(basis, props)
            resid = (feats ** 2).sum(axis=1)
            if i:
                coeff = feats @ ortho[:, :i]
                resid = resid - (coeff ** 2).sum(axis=1)
            if resid.max() > sup * (1.0 + 1e-9):
                raise EnvelopeViolationError(
                    f"residual {resid.max():.17g} exceeds envelope {sup:.17g}")
            hits = np.flatnonzero(rng.random(batch) * sup < resid)
            if hits.size:
                accepted = hits[0]
        points[i] = props[accepted]
        vec = feats[accepted].copy()
        # two classical Gram-Schmidt passes ("twice is enough")
        for _ in range(2):
            if i:
                vec -= ortho[:, :i] @ (ortho[:, :i].T @ vec)
        norm = np.linalg.norm(vec)
        if norm < 1e-10:
            raise DegenerateFeatureError(
                f"feature residual norm {norm:.3e} below tolerance at point {i}")
        ortho[:, i] = vec / norm
    return PointConfiguration("manifold", points, rng.replica_index,
                              basis.cutoff, model.name)


def sample_replicas(basis: SpectralBasis, model: ManifoldModel, seed: int,
                    n_replicas: int, threads: int = 1) -> list[PointConfiguration]:
    """Independent replicas on per-replica streams, in replica order."""
    sup = sup_feature_norm(basis)

    def one(idx: int) -> PointConfiguration:
        return sample_dpp(basis, model, RandomStream(seed, idx), sup_norm=sup)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(one, range(n_replicas)))
    return [one(i) for i in range(n_replicas)]


def pull_back(config: PointConfiguration, chart: TangentChart) -> PointConfiguration:
    """Scaled chart coordinates of the points inside the chart window.

    Points at distance epsilon or more from the base point are dropped;
    the survivors map to lam * log_p(x) in the chart frame.
    """
    if config.space != "manifold":
        raise ValueError("pull_back expects a manifold configuration")
    if config.lam != chart.lam:
        raise ValueError("configuration and chart scales must agree")
    model, p = chart.model, chart.base_point
    base_frame = frame_at(model, p)
    kept = []
    for x in config.points:
        if distance(model, p, x) < chart.epsilon:
            ambient = log_map(model, p, x) @ base_frame
            kept.append(chart.lam * (chart.frame @ ambient))
    coords = np.array(kept).reshape(len(kept), model.dim)
    return PointConfiguration("chart", coords, config.replica_index,
                              config.lam, config.model_name)
