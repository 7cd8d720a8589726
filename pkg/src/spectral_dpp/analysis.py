"""Estimators and deterministic verifiers.

Deterministic side: eigenvalue-count asymptotics, sup-norm convergence of
the scaled kernel to its band-limited limit, Nystrom evaluation of
Fredholm determinants.  Statistical side: intensity and pair-correlation
estimators and Laplace-functional Monte Carlo over independent replicas;
every Monte Carlo scalar carries a standard error from replica variance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import specfun
from .kernel import chart_density, scaled_kernel_matrix, universal_kernel
from .manifold import SPHERE2, TWO_PI, ManifoldModel, TangentChart
from .sampler import PointConfiguration
from .spectrum import SpectralBasis, build_basis, count

# two-sided 97.5% Student quantiles for small fit dofs, normal beyond
_T975 = {1: 12.706, 2: 4.303, 3: 3.182, 4: 2.776, 5: 2.571, 6: 2.447,
         7: 2.365, 8: 2.306, 9: 2.262, 10: 2.228}


@dataclass
class EstimatorReport:
    """Named results: scalars with standard errors, tables, fitted slopes."""
    name: str
    scalars: dict = field(default_factory=dict)
    tables: dict = field(default_factory=dict)
    slopes: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def add_scalar(self, key: str, value: float, se: float | None = None):
        self.scalars[key] = {"value": float(value),
                             "se": None if se is None else float(se)}

    def add_table(self, key: str, columns, rows):
        self.tables[key] = {"columns": list(columns),
                            "rows": [[float(v) for v in row] for row in rows]}

    def to_dict(self) -> dict:
        return {"name": self.name, "scalars": self.scalars,
                "tables": self.tables, "slopes": self.slopes,
                "metadata": self.metadata, "notes": self.notes}


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and positive weights on an interval or a box."""
    kind: str
    order: int
    nodes: np.ndarray      # (n,) in 1D, (n, d) on boxes
    weights: np.ndarray
    domain: tuple

    @classmethod
    def gauss_legendre(cls, order: int, domain) -> "QuadratureRule":
        if order < 2:
            raise ValueError("quadrature order must be at least 2")
        intervals = _as_intervals(domain)
        x, w = np.polynomial.legendre.leggauss(order)
        nodes_1d, weights_1d = [], []
        for a, b in intervals:
            nodes_1d.append(0.5 * (b - a) * x + 0.5 * (a + b))
            weights_1d.append(0.5 * (b - a) * w)
        if len(intervals) == 1:
            return cls("gauss-legendre", order, nodes_1d[0], weights_1d[0],
                       intervals[0])
        grids = np.meshgrid(*nodes_1d, indexing="ij")
        nodes = np.column_stack([g.ravel() for g in grids])
        wgrids = np.meshgrid(*weights_1d, indexing="ij")
        weights = np.prod(np.stack([g.ravel() for g in wgrids]), axis=0)
        return cls("gauss-legendre", order, nodes, weights, tuple(intervals))

    @classmethod
    def trapezoid(cls, order: int, domain) -> "QuadratureRule":
        """Uniform periodic rule; exact for trigonometric polynomials of
        degree below the node count."""
        if order < 2:
            raise ValueError("quadrature order must be at least 2")
        a, b = _as_intervals(domain)[0]
        h = (b - a) / order
        return cls("trapezoid", order, a + h * np.arange(order),
                   np.full(order, h), (a, b))


def _as_intervals(domain) -> list[tuple[float, float]]:
    arr = np.asarray(domain, dtype=float)
    if arr.ndim == 1:
        arr = arr[None, :]
    out = []
    for a, b in arr:
        if not b > a:
            raise ValueError("domain intervals must have positive length")
        out.append((float(a), float(b)))
    return out


def fit_loglog(xs, ys) -> dict:
    """Least-squares slope of log y against log x with a 95% half-width."""
    xs = np.log(np.asarray(xs, dtype=float))
    ys = np.log(np.asarray(ys, dtype=float))
    n = xs.size
    slope, intercept = np.polyfit(xs, ys, 1)
    resid = ys - (slope * xs + intercept)
    if n > 2:
        s2 = (resid @ resid) / (n - 2)
        se = math.sqrt(s2 / ((xs - xs.mean()) @ (xs - xs.mean())))
        half = _T975.get(n - 2, 1.96) * se
    else:
        half = math.inf
    return {"slope": float(slope), "intercept": float(intercept),
            "half_width95": float(half), "n": int(n)}


# ---------------------------------------------------------------------------
# correlation functions and counting asymptotics

def correlation_fn(kernel_fn, points) -> float:
    """n-point correlation: determinant of the kernel matrix."""
    pts = list(points)
    if len(pts) < 1:
        raise ValueError("need at least one point")
    mat = np.array([[kernel_fn(x, y) for y in pts] for x in pts])
    return float(np.linalg.det(mat))


def weyl_check(model: ManifoldModel, lambdas) -> EstimatorReport:
    """Eigenvalue counts against the leading-order growth law.

    Reports N, the leading term, their ratio and the residual per cutoff,
    plus the fitted log-log slope of the nonzero residuals (expected to
    stay at or below dimension - 1).
    """
    lams = [float(l) for l in lambdas]
    if any(l <= 0 for l in lams) or any(b <= a for a, b in zip(lams, lams[1:])):
        raise ValueError("cutoffs must be positive and increasing")
    m = model.dim
    coeff = specfun.unit_ball_volume(m) * model.volume / TWO_PI**m
    rows = []
    for lam in lams:
        n = count(model, lam)
        leading = coeff * lam**m
        rows.append((lam, n, leading, n / leading, n - leading))
    report = EstimatorReport("weyl_check",
                             metadata={"model": model.name, "lambdas": lams})
    report.add_table("counts", ["lambda", "count", "leading", "ratio", "residual"],
                     rows)
    nz = [(lam, abs(r)) for lam, _, _, _, r in rows if abs(r) > 0]
    if len(nz) >= 3:
        fit = fit_loglog([p[0] for p in nz], [p[1] for p in nz])
        if fit["n"] < 4:
            report.notes.append("slope fitted on fewer than 4 cutoffs")
        report.slopes["log_abs_residual"] = fit
    else:
        report.notes.append("slope omitted: fewer than 3 nonzero residuals")
    return report


# ---------------------------------------------------------------------------
# kernel convergence

def default_chart_grid(m: int, extent: float = 4.0, per_dim: int | None = None) -> np.ndarray:
    """Symmetric grid of chart points with norm at most `extent`."""
    if per_dim is None:
        per_dim = 17 if m == 1 else 9
    axis = np.linspace(-extent, extent, per_dim)
    if m == 1:
        return axis[:, None]
    grids = np.meshgrid(*([axis] * m), indexing="ij")
    pts = np.column_stack([g.ravel() for g in grids])
    return pts[np.linalg.norm(pts, axis=1) <= extent + 1e-12]


def kernel_convergence(model: ManifoldModel, p, eps, lambdas, grid,
                       basis_cache: dict | None = None) -> EstimatorReport:
    """Sup distance between the scaled kernel and its limit on a fixed grid.

    Runs at one or several window radii; the grid must stay inside the
    window at the smallest scale, which also makes the results identical
    across radii.
    """
    from .spectrum import build_basis

    eps_list = [float(e) for e in np.atleast_1d(eps)]
    lams = [float(l) for l in lambdas]
    grid = np.asarray(grid, dtype=float)
    if grid.ndim == 1:
        grid = grid[:, None]
    max_norm = float(np.linalg.norm(grid, axis=1).max())
    for e in eps_list:
        if max_norm / min(lams) >= e:
            raise ValueError(
                f"grid of radius {max_norm} escapes the window {e} at "
                f"the smallest scale {min(lams)}")
    m = model.dim
    n_grid = grid.shape[0]
    limit = np.empty((n_grid, n_grid))
    for i in range(n_grid):
        for j in range(n_grid):
            limit[i, j] = universal_kernel(m, grid[i], grid[j])
    basis_cache = {} if basis_cache is None else basis_cache
    sup_dist = {e: [] for e in eps_list}
    for lam in lams:
        if lam not in basis_cache:
            basis_cache[lam] = build_basis(model, lam)
        basis = basis_cache[lam]
        for e in eps_list:
            chart = TangentChart.at(model, p, lam=lam, epsilon=e)
            scaled = scaled_kernel_matrix(basis, chart, grid)
            sup_dist[e].append(float(np.abs(scaled - limit).max()))
    report = EstimatorReport(
        "kernel_convergence",
        metadata={"model": model.name, "lambdas": lams, "eps": eps_list,
                  "grid_points": n_grid, "grid_radius": max_norm})
    cols = ["lambda"] + [f"sup_diff_eps_{k}" for k in range(len(eps_list))]
    rows = [[lam] + [sup_dist[e][i] for e in eps_list]
            for i, lam in enumerate(lams)]
    report.add_table("sup_difference", cols, rows)
    for k, e in enumerate(eps_list):
        if len(lams) >= 3:
            fit = fit_loglog(lams, sup_dist[e])
            if fit["n"] < 4:
                report.notes.append("slope fitted on fewer than 4 scales")
            report.slopes[f"eps_{k}"] = fit
    if len(eps_list) > 1:
        spread = max(abs(sup_dist[eps_list[0]][i] - sup_dist[e][i])
                     for e in eps_list[1:] for i in range(len(lams)))
        report.add_scalar("cross_eps_spread", spread)
    return report


# ---------------------------------------------------------------------------
# binned intensity

class IntensityBins:
    """Partition of a manifold or chart window with reference volumes."""

    def __init__(self, space: str, edges: list[np.ndarray], volumes: np.ndarray,
                 assign_fn, labels: list[str]):
        self.space = space
        self.edges = edges
        self.volumes = volumes
        self._assign = assign_fn
        self.labels = labels

    @property
    def n_bins(self) -> int:
        return self.volumes.size

    def assign(self, points: np.ndarray) -> np.ndarray:
        """Bin index per point, -1 for points outside the partition."""
        return self._assign(points)


def manifold_bins(model: ManifoldModel, per_dim: int = 4) -> IntensityBins:
    """Equal-volume partition of the whole manifold."""
    if model.kind == SPHERE2:
        z_edges = np.linspace(-1.0, 1.0, per_dim + 1)
        phi_edges = np.linspace(0.0, TWO_PI, per_dim + 1)
        vol = np.full(per_dim * per_dim,
                      (z_edges[1] - z_edges[0]) * (phi_edges[1] - phi_edges[0]))

        def assign(pts):
            z = np.clip(pts[:, 2], -1.0, 1.0 - 1e-15)
            phi = np.mod(np.arctan2(pts[:, 1], pts[:, 0]), TWO_PI)
            iz = np.minimum((np.digitize(z, z_edges) - 1), per_dim - 1)
            ip = np.minimum((np.digitize(phi, phi_edges) - 1), per_dim - 1)
            return iz * per_dim + ip

        labels = [f"z{j}p{k}" for j in range(per_dim) for k in range(per_dim)]
        return IntensityBins("manifold", [z_edges, phi_edges], vol, assign, labels)
    edges = np.linspace(0.0, TWO_PI, per_dim + 1)
    m = model.dim
    vol = np.full(per_dim**m, (TWO_PI / per_dim) ** m)

    def assign(pts):
        idx = np.minimum(np.digitize(np.mod(pts, TWO_PI), edges) - 1, per_dim - 1)
        flat = idx[:, 0]
        for d in range(1, m):
            flat = flat * per_dim + idx[:, d]
        return flat

    labels = [str(t) for t in np.ndindex(*([per_dim] * m))]
    return IntensityBins("manifold", [edges] * m, vol, assign, labels)


def chart_bins(chart: TangentChart, halfwidth: float, per_dim: int = 4) -> IntensityBins:
    """Boxes tiling [-halfwidth, halfwidth]^m in chart coordinates.

    Reference volumes carry the pull-back density correction evaluated at
    bin centers, so estimates are comparable to kernel diagonals.
    """
    m = chart.model.dim
    edges = np.linspace(-halfwidth, halfwidth, per_dim + 1)
    centers_1d = 0.5 * (edges[:-1] + edges[1:])
    lebesgue = (edges[1] - edges[0]) ** m
    centers = [np.array(t) for t in
               np.stack(np.meshgrid(*([centers_1d] * m), indexing="ij"),
                        axis=-1).reshape(-1, m)]
    vol = np.array([lebesgue * chart_density(chart, c) for c in centers])

    def assign(pts):
        inside = np.all((pts >= -halfwidth) & (pts < halfwidth), axis=1)
        idx = np.minimum(np.digitize(pts, edges) - 1, per_dim - 1)
        flat = idx[:, 0]
        for d in range(1, m):
            flat = flat * per_dim + idx[:, d]
        return np.where(inside, flat, -1)

    labels = [str(t) for t in np.ndindex(*([per_dim] * m))]
    return IntensityBins("chart", [edges] * m, vol, assign, labels)


def estimate_intensity(configs: list[PointConfiguration],
                       bins: IntensityBins) -> EstimatorReport:
    """Per-bin point density with replica standard errors."""
    if len(configs) < 100:
        raise ValueError("need at least 100 replicas")
    if any(c.space != bins.space for c in configs):
        raise ValueError(f"configurations must live in {bins.space} space")
    configs = sorted(configs, key=lambda c: c.replica_index)
    n_rep = len(configs)
    counts = np.zeros((n_rep, bins.n_bins))
    for r, cfg in enumerate(configs):
        if len(cfg):
            idx = bins.assign(cfg.points)
            idx = idx[idx >= 0]
            counts[r] = np.bincount(idx, minlength=bins.n_bins)
    dens = counts / bins.volumes
    mean = dens.mean(axis=0)
    se = dens.std(axis=0, ddof=1) / math.sqrt(n_rep)
    report = EstimatorReport(
        "intensity",
        metadata={"replicas": n_rep, "bins": bins.n_bins, "space": bins.space})
    report.add_table("intensity",
                     ["bin", "volume", "estimate", "se"],
                     [(k, bins.volumes[k], mean[k], se[k])
                      for k in range(bins.n_bins)])
    empty = [k for k in range(bins.n_bins) if counts[:, k].sum() == 0]
    if empty:
        report.notes.append(f"empty bins: {empty}")
    return report


# ---------------------------------------------------------------------------
# pair correlation

def _pair_geometry(m: int, sides: np.ndarray, r1: float, r2: float,
                   order: int = 64) -> float:
    """Integral over separations r in [r1, r2] of the window overlap
    volume prod_i (L_i - |t_i|)+, for ordered pairs in a box window."""
    if m == 1:
        L = sides[0]
        hi = min(r2, L)
        if hi <= r1:
            return 0.0
        return 2.0 * ((L - r1) * (hi - r1) - 0.5 * (hi - r1) ** 2)
    x, w = np.polynomial.legendre.leggauss(order)
    r = 0.5 * (r2 - r1) * x + 0.5 * (r1 + r2)
    wr = 0.5 * (r2 - r1) * w
    if m == 2:
        theta = 0.25 * math.pi * (x + 1.0)
        wt = 0.25 * math.pi * w
        ct, st = np.cos(theta), np.sin(theta)
        overlap = (np.maximum(sides[0] - np.outer(r, ct), 0.0)
                   * np.maximum(sides[1] - np.outer(r, st), 0.0))
        ang = 4.0 * overlap @ wt
        return float((wr * r) @ ang)
    # m == 3: polar cosine x azimuth, using octant symmetry
    cz = 0.5 * (x + 1.0)
    wz = 0.5 * w
    phi = 0.25 * math.pi * (x + 1.0)
    wp = 0.25 * math.pi * w
    sz = np.sqrt(1.0 - cz**2)
    total = np.zeros_like(r)
    for k in range(order):
        dx = sz[k] * np.cos(phi)
        dy = sz[k] * np.sin(phi)
        overlap = (np.maximum(sides[0] - np.outer(r, dx), 0.0)
                   * np.maximum(sides[1] - np.outer(r, dy), 0.0)
                   * np.maximum(sides[2] - r[:, None] * cz[k], 0.0))
        total += wz[k] * (overlap @ wp)
    return float((wr * r * r) @ (8.0 * total))


def estimate_pcf(configs: list[PointConfiguration], r_edges,
                 window_halfwidth: float,
                 basis: SpectralBasis | None = None,
                 chart: TangentChart | None = None) -> EstimatorReport:
    """Distance-binned pair correlation in a chart box window.

    Uses translation edge correction (window overlap volume).  When the
    generating basis and chart are supplied, two reference columns are
    added: the bin average of the exact finite-scale prediction and of
    the limiting one, both weighted the same way as the estimator.
    """
    if len(configs) < 1000:
        raise ValueError("need at least 1000 replicas")
    if any(c.space != "chart" for c in configs):
        raise ValueError("configurations must be in chart space")
    configs = sorted(configs, key=lambda c: c.replica_index)
    m = configs[0].points.shape[1] if len(configs[0]) else 1
    for c in configs:
        if len(c):
            m = c.points.shape[1]
            break
    r_edges = np.asarray(r_edges, dtype=float)
    n_bins = r_edges.size - 1
    w = float(window_halfwidth)
    sides = np.full(m, 2.0 * w)
    n_rep = len(configs)
    counts = np.zeros((n_rep, n_bins))
    totals = np.zeros(n_rep)
    for r, cfg in enumerate(configs):
        pts = cfg.points
        if len(pts) == 0:
            continue
        pts = pts[np.all(np.abs(pts) <= w, axis=1)]
        totals[r] = len(pts)
        if len(pts) < 2:
            continue
        diff = pts[:, None, :] - pts[None, :, :]
        dist = np.sqrt((diff**2).sum(axis=-1))
        iu = np.triu_indices(len(pts), k=1)
        hist, _ = np.histogram(dist[iu], bins=r_edges)
        counts[r] = 2.0 * hist          # ordered pairs
    volume = float(np.prod(sides))
    rho = totals.sum() / (n_rep * volume)
    geom = np.array([_pair_geometry(m, sides, r_edges[k], r_edges[k + 1])
                     for k in range(n_bins)])
    flagged = [k for k in range(n_bins) if geom[k] <= 0.0]
    safe_geom = np.where(geom > 0.0, geom, np.nan)
    per_rep = counts / (rho**2 * safe_geom)
    g_hat = per_rep.mean(axis=0)
    g_se = per_rep.std(axis=0, ddof=1) / math.sqrt(n_rep)
    report = EstimatorReport(
        "pair_correlation",
        metadata={"replicas": n_rep, "window_halfwidth": w, "dim": m,
                  "intensity": rho})
    report.add_scalar("intensity", rho,
                      totals.std(ddof=1) / math.sqrt(n_rep) / volume)
    columns = ["r_lo", "r_hi", "g2", "se"]
    ref_fin, ref_lim = None, None
    if basis is not None and chart is not None:
        ref_fin, ref_lim = _pcf_reference(basis, chart, r_edges, sides)
        columns += ["g2_finite", "g2_limit"]
    rows = []
    for k in range(n_bins):
        row = [r_edges[k], r_edges[k + 1],
               g_hat[k] if geom[k] > 0 else math.nan,
               g_se[k] if geom[k] > 0 else math.nan]
        if ref_fin is not None:
            row += [ref_fin[k], ref_lim[k]]
        rows.append(row)
    report.add_table("pcf", columns, rows)
    if flagged:
        report.notes.append(f"window too small for bins: {flagged}")
    return report


def _pcf_reference(basis: SpectralBasis, chart: TangentChart, r_edges,
                   sides, order: int = 24):
    """Window-weighted bin averages of the predicted pair correlations.

    Valid on the translation-invariant models, where the chart kernel
    depends only on the separation.
    """
    m = chart.model.dim
    x, wq = np.polynomial.legendre.leggauss(order)
    fin, lim = [], []
    origin = np.zeros(m)
    diag_fin = scaled_kernel_matrix(basis, chart, origin[None, :])[0, 0]
    diag_lim = universal_kernel(m, origin, origin)
    for k in range(r_edges.size - 1):
        r1, r2 = r_edges[k], r_edges[k + 1]
        r = 0.5 * (r2 - r1) * x + 0.5 * (r1 + r2)
        if m == 1:
            weight = np.maximum(sides[0] - r, 0.0)
        else:
            weight = r ** (m - 1)       # isotropic leading weight
        us = np.zeros((order, m))
        us[:, 0] = r
        kr = scaled_kernel_matrix(basis, chart, origin[None, :], us)[0]
        g_fin = 1.0 - (kr / diag_fin) ** 2
        g_lim = 1.0 - np.array(
            [universal_kernel(m, origin, u) for u in us]) ** 2 / diag_lim**2
        denom = weight @ wq
        fin.append(float((weight * g_fin) @ wq / denom))
        lim.append(float((weight * g_lim) @ wq / denom))
    return np.array(fin), np.array(lim)


# ---------------------------------------------------------------------------
# Fredholm determinants and Laplace functionals

def fredholm_det(kernel_fn, h, region, quad=64, gram_fn=None) -> float:
    """Nystrom value of det(I + (h - 1) K restricted to the region).

    The matrix is the symmetrized form
    delta_ij + (h(x_i) - 1) sqrt(w_i) K(x_i, x_j) sqrt(w_j),
    evaluated by pivoted LU.  `quad` is a rule or a Gauss-Legendre order;
    `gram_fn(nodes)` may supply the kernel matrix in one call.
    """
    rule = quad if isinstance(quad, QuadratureRule) else \
        QuadratureRule.gauss_legendre(int(quad), region)
    nodes = rule.nodes
    sqw = np.sqrt(rule.weights)
    if gram_fn is not None:
        kmat = np.asarray(gram_fn(nodes), dtype=float)
    else:
        pts = nodes if nodes.ndim > 1 else nodes[:, None]
        n = pts.shape[0]
        kmat = np.empty((n, n))
        for i in range(n):
            for j in range(n):
                kmat[i, j] = kernel_fn(pts[i], pts[j])
    hvals = np.array([float(h(x)) for x in nodes])
    mat = np.eye(len(sqw)) + (hvals - 1.0)[:, None] * (sqw[:, None] * kmat * sqw[None, :])
    return float(np.linalg.det(mat))


def gap_probability(kernel_fn, region, quad=64, gram_fn=None) -> float:
    """Probability of seeing no points in the region (h identically 0)."""
    return fredholm_det(kernel_fn, lambda x: 0.0, region, quad, gram_fn=gram_fn)


def universal_gram(m: int):
    """Vectorized matrix builder for the limit kernel, for Nystrom use."""
    pref = (2.0 * math.pi) ** (-m / 2.0)

    def gram(nodes):
        pts = np.asarray(nodes, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        diff = pts[:, None, :] - pts[None, :, :]
        dist = np.sqrt((diff**2).sum(axis=-1))
        return pref * specfun.f_alpha_grid(m / 2.0, dist)

    return gram


@dataclass(frozen=True)
class Arc:
    """Angular interval [a, b) on the circle, as a region."""
    a: float
    b: float

    @property
    def length(self) -> float:
        return self.b - self.a

    def indicator(self, points: np.ndarray) -> np.ndarray:
        theta = np.mod(np.atleast_2d(points)[:, 0] - self.a, TWO_PI)
        return theta < (self.b - self.a)

    @property
    def quad_domain(self):
        return (self.a, self.b)


@dataclass(frozen=True)
class Box:
    """Axis-aligned box region for chart or torus coordinates."""
    intervals: tuple

    def indicator(self, points: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(points)
        ok = np.ones(len(pts), dtype=bool)
        for d, (a, b) in enumerate(self.intervals):
            ok &= (pts[:, d] >= a) & (pts[:, d] < b)
        return ok

    @property
    def quad_domain(self):
        return tuple(self.intervals)


def laplace_functional_mc(configs: list[PointConfiguration], h) -> tuple[float, float]:
    """Monte Carlo mean and standard error of prod_{x in Xi} h(x)."""
    if len(configs) < 1000:
        raise ValueError("need at least 1000 replicas")
    configs = sorted(configs, key=lambda c: c.replica_index)
    vals = np.empty(len(configs))
    for r, cfg in enumerate(configs):
        prod = 1.0
        for x in cfg.points:
            prod *= float(h(x))
        vals[r] = prod
    return float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(len(vals)))


def empty_prob_mc(configs: list[PointConfiguration], region) -> tuple[float, float]:
    """Monte Carlo empty probability of a region, with standard error."""
    if len(configs) < 1000:
        raise ValueError("need at least 1000 replicas")
    configs = sorted(configs, key=lambda c: c.replica_index)
    vals = np.empty(len(configs))
    for r, cfg in enumerate(configs):
        vals[r] = 0.0 if (len(cfg) and region.indicator(cfg.points).any()) else 1.0
    return float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(len(vals)))
