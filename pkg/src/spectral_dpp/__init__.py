"""Spectral-projection determinantal point processes on model manifolds.

Build a truncated eigenbasis of the square-root Laplacian on a circle,
flat torus or round 2-sphere, sample the associated rank-N projection
point process exactly, pull samples back through the scaled exponential
chart, and verify convergence of the chart kernel to its band-limited
limit, both deterministically and statistically.
"""

from .manifold import (ManifoldModel, TangentChart, circle, distance,
                       exp_map, flat_torus, frame_at, from_name, log_map,
                       scaled_distance, sphere2, uniform_sample)
from .kernel import (KernelTable, chart_density, fourier_ball, fourier_sphere,
                     projection_gram, projection_kernel, scaled_kernel,
                     scaled_kernel_matrix, tabulate, universal_kernel)
from .sampler import (PointConfiguration, RandomStream, pull_back, sample_dpp,
                      sample_replicas, sup_feature_norm)
from .specfun import bessel_j, f_alpha, unit_ball_volume
from .spectrum import SpectralBasis, build_basis, count, eval_basis, eval_basis_many

__all__ = [
    "ManifoldModel", "TangentChart", "circle", "flat_torus", "sphere2",
    "from_name", "distance", "exp_map", "log_map", "scaled_distance",
    "frame_at", "uniform_sample",
    "SpectralBasis", "build_basis", "count", "eval_basis", "eval_basis_many",
    "KernelTable", "projection_kernel", "projection_gram", "scaled_kernel",
    "scaled_kernel_matrix", "universal_kernel", "fourier_ball",
    "fourier_sphere", "chart_density", "tabulate",
    "PointConfiguration", "RandomStream", "sample_dpp", "sample_replicas",
    "pull_back", "sup_feature_norm",
    "bessel_j", "f_alpha", "unit_ball_volume",
]

__version__ = "0.1.0"
