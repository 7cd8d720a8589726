import math

import numpy as np
import pytest

from spectral_dpp import manifold as mf
from spectral_dpp.analysis import (Arc, Box, QuadratureRule, chart_bins,
                                   correlation_fn, default_chart_grid,
                                   empty_prob_mc, estimate_intensity,
                                   estimate_pcf, fit_loglog, fredholm_det,
                                   gap_probability, kernel_convergence,
                                   laplace_functional_mc, manifold_bins,
                                   universal_gram, weyl_check,
                                   _pair_geometry)
from spectral_dpp.kernel import projection_gram, universal_kernel
from spectral_dpp.manifold import TangentChart
from spectral_dpp.sampler import (PointConfiguration, RandomStream, pull_back,
                                  sample_replicas)
from spectral_dpp.spectrum import build_basis

from oracles import pair_overlap_brute


# ---------------------------------------------------------------------------
# quadrature plumbing

def test_quadrature_weights_sum_to_volume():
    rule = QuadratureRule.gauss_legendre(32, (0.0, 0.5))
    assert rule.weights.min() > 0
    assert rule.weights.sum() == pytest.approx(0.5, abs=1e-12)
    box = QuadratureRule.gauss_legendre(16, [(-1.0, 1.0), (0.0, 3.0)])
    assert box.weights.min() > 0
    assert box.weights.sum() == pytest.approx(6.0, abs=1e-12)
    trap = QuadratureRule.trapezoid(128, (0.0, 2 * math.pi))
    assert trap.weights.sum() == pytest.approx(2 * math.pi, abs=1e-12)


def test_quadrature_order_guard():
    with pytest.raises(ValueError):
        QuadratureRule.gauss_legendre(1, (0.0, 1.0))
    with pytest.raises(ValueError):
        fredholm_det(None, lambda x: 0.0, (0.0, 1.0), 1,
                     gram_fn=universal_gram(1))


# ---------------------------------------------------------------------------
# correlation functions

def test_correlation_fn_examples():
    sinc = lambda x, y: universal_kernel(1, x, y)
    assert correlation_fn(sinc, [np.array([0.4])]) == pytest.approx(
        1 / math.pi, abs=1e-14)
    assert correlation_fn(sinc, [np.array([0.4]), np.array([0.4])]) == \
        pytest.approx(0.0, abs=1e-12)
    val = correlation_fn(sinc, [np.array([0.0]), np.array([math.pi])])
    assert val == pytest.approx(1 / math.pi**2, abs=1e-12)


def test_correlation_fn_nonnegative_minors():
    from spectral_dpp.kernel import projection_kernel
    from spectral_dpp.manifold import uniform_sample
    basis = build_basis(mf.circle(), 3.5)
    rng = RandomStream(55, 0)
    for _ in range(200):
        n = int(rng.uniform(1, 6))
        pts = uniform_sample(mf.circle(), rng, size=n)
        rho = correlation_fn(lambda x, y: projection_kernel(basis, x, y),
                             list(pts))
        assert rho >= -1e-10


# ---------------------------------------------------------------------------
# counting asymptotics

def test_weyl_examples():
    rep = weyl_check(mf.circle(), [12.5, 25.0, 50.0])
    lam, n, leading, ratio, resid = rep.tables["counts"]["rows"][-1]
    assert (n, leading) == (101, pytest.approx(100.0, abs=1e-9))
    assert ratio == pytest.approx(1.01, abs=1e-9)
    rep = weyl_check(mf.sphere2(), [12.5, 25.0, 50.0])
    assert rep.tables["counts"]["rows"][-1][3] == 1.0
    rep = weyl_check(mf.flat_torus(2), [2.5, 5.0, 10.0])
    lam, n, leading, ratio, resid = rep.tables["counts"]["rows"][-1]
    assert n == 317
    assert leading == pytest.approx(100 * math.pi, abs=1e-9)


def test_weyl_ratio_near_one_at_50():
    for model in (mf.circle(), mf.flat_torus(2), mf.sphere2()):
        rep = weyl_check(model, [50.0])
        assert 0.98 <= rep.tables["counts"]["rows"][0][3] <= 1.02


def test_weyl_validates_and_notes():
    with pytest.raises(ValueError):
        weyl_check(mf.circle(), [10.0, 5.0])
    with pytest.raises(ValueError):
        weyl_check(mf.circle(), [-1.0, 2.0])
    rep = weyl_check(mf.circle(), [10.0, 20.0])
    assert "slopes" not in rep.slopes
    assert any("slope omitted" in n for n in rep.notes)


# ---------------------------------------------------------------------------
# kernel convergence

def test_convergence_decreasing_and_rate_circle():
    rep = kernel_convergence(mf.circle(), [0.0], [math.pi / 2],
                             [10.0, 20.0, 40.0, 80.0], default_chart_grid(1))
    d = [row[1] for row in rep.tables["sup_difference"]["rows"]]
    assert d[0] > d[1] > d[2] > d[3]
    assert -1.4 <= rep.slopes["eps_0"]["slope"] <= -0.6


def test_convergence_identical_across_windows():
    rep = kernel_convergence(mf.circle(), [0.0], [math.pi / 2, math.pi / 3],
                             [10.0, 20.0], default_chart_grid(1))
    rows = rep.tables["sup_difference"]["rows"]
    for row in rows:
        assert row[1] == row[2]
    assert rep.scalars["cross_eps_spread"]["value"] == 0.0


def test_convergence_sphere_diagonal_matches_at_count_perfect_scales():
    s2 = mf.sphere2()
    for lam in (10.0, 50.0):
        basis = build_basis(s2, lam)
        chart = TangentChart.at(s2, np.array([0.0, 0.0, 1.0]), lam=lam)
        from spectral_dpp.kernel import scaled_kernel
        diff = scaled_kernel(basis, chart, np.zeros(2), np.zeros(2)) \
            - universal_kernel(2, np.zeros(2), np.zeros(2))
        assert abs(diff) <= 1e-13


def test_convergence_grid_escape_guard():
    with pytest.raises(ValueError):
        kernel_convergence(mf.circle(), [0.0], [0.1], [10.0, 20.0],
                           default_chart_grid(1))


# ---------------------------------------------------------------------------
# intensity estimation

def test_intensity_requires_replicas():
    with pytest.raises(ValueError):
        estimate_intensity([], manifold_bins(mf.circle()))
    cfg = PointConfiguration("manifold", np.zeros((1, 1)), 0, 0.0, "circle")
    with pytest.raises(ValueError):
        estimate_intensity([cfg] * 99, manifold_bins(mf.circle()))


def test_intensity_sphere_uniform():
    model = mf.sphere2()
    basis = build_basis(model, 3.0)
    configs = sample_replicas(basis, model, seed=14, n_replicas=400)
    report = estimate_intensity(configs, manifold_bins(model, per_dim=2))
    target = basis.size / model.volume
    for _, _, est, se in report.tables["intensity"]["rows"]:
        assert abs(est - target) <= 3 * se


def test_intensity_chart_bins_near_universal_diagonal():
    model = mf.flat_torus(1)
    lam = 20.0
    basis = build_basis(model, lam)
    chart = TangentChart.at(model, np.zeros(1), lam=lam)
    configs = sample_replicas(basis, model, seed=15, n_replicas=1200)
    charts = [pull_back(c, chart) for c in configs]
    report = estimate_intensity(charts, chart_bins(chart, 2.0, per_dim=4))
    finite_diag = basis.size / (model.volume * lam)
    for _, _, est, se in report.tables["intensity"]["rows"]:
        assert abs(est - finite_diag) <= 3 * se
        # finite-scale diagonal is itself within a few percent of the limit
    assert finite_diag == pytest.approx(1 / math.pi, rel=0.03)


# ---------------------------------------------------------------------------
# pair correlation

def test_pair_geometry_matches_brute_force():
    sides = np.array([4.0])
    assert _pair_geometry(1, sides, 0.5, 1.0) == pytest.approx(
        2 * ((4 - 0.5) * 0.5 - 0.5 * 0.25), abs=1e-12)
    sides2 = np.array([3.0, 3.0])
    for r1, r2 in [(0.0, 0.5), (0.5, 1.5), (2.0, 2.5)]:
        brute = pair_overlap_brute(sides2, r1, r2, n=1201)
        assert _pair_geometry(2, sides2, r1, r2) == pytest.approx(
            brute, rel=2e-2)
    sides3 = np.array([2.0, 2.0, 2.0])
    brute = pair_overlap_brute(sides3, 0.4, 0.9, n=201)
    assert _pair_geometry(3, sides3, 0.4, 0.9) == pytest.approx(brute, rel=5e-2)


def test_pcf_limits_and_truth():
    model = mf.flat_torus(1)
    lam = 10.0
    basis = build_basis(model, lam)
    chart = TangentChart.at(model, np.zeros(1), lam=lam)
    configs = sample_replicas(basis, model, seed=16, n_replicas=2000)
    charts = [pull_back(c, chart) for c in configs]
    edges = np.arange(0.0, 5.5, 0.5)
    report = estimate_pcf(charts, edges, 5.0, basis=basis, chart=chart)
    rows = report.tables["pcf"]["rows"]
    # repulsion at the origin
    assert rows[0][2] < 0.15
    # decorrelation at large separations
    for row in rows[-3:]:
        assert abs(row[2] - 1.0) <= max(3 * row[3], 0.05)
    # finite-scale truth within 3 standard errors everywhere
    for row in rows:
        assert abs(row[2] - row[4]) <= 3 * row[3]


def test_pcf_window_flagging():
    model = mf.flat_torus(1)
    lam = 10.0
    basis = build_basis(model, lam)
    chart = TangentChart.at(model, np.zeros(1), lam=lam)
    configs = sample_replicas(basis, model, seed=17, n_replicas=1000)
    charts = [pull_back(c, chart) for c in configs]
    report = estimate_pcf(charts, np.array([0.0, 1.0, 9.0, 11.0]), 4.0)
    assert any("window too small" in n for n in report.notes)


def test_pcf_requires_chart_space():
    cfg = PointConfiguration("manifold", np.zeros((1, 1)), 0, 1.0, "circle")
    with pytest.raises(ValueError):
        estimate_pcf([cfg] * 1000, np.array([0.0, 1.0]), 1.0)


# ---------------------------------------------------------------------------
# Fredholm determinants

def test_fredholm_identity_h_one():
    val = fredholm_det(None, lambda x: 1.0, (-1.0, 1.0), 32,
                       gram_fn=universal_gram(1))
    assert val == 1.0


def test_sinc_gap_trace_expansion():
    s = 0.01
    det = gap_probability(None, (-s, s), 64, gram_fn=universal_gram(1))
    assert det == pytest.approx(1 - 2 * s / math.pi, abs=1e-4)


def test_nystrom_self_convergence_interval():
    g = universal_gram(1)
    d64 = gap_probability(None, (-2.0, 2.0), 64, gram_fn=g)
    d128 = gap_probability(None, (-2.0, 2.0), 128, gram_fn=g)
    assert abs(d64 - d128) <= 1e-8


def test_nystrom_self_convergence_box():
    g = universal_gram(2)
    box = [(-1.0, 1.0), (-1.0, 1.0)]
    d32 = gap_probability(None, box, 32, gram_fn=g)
    d64 = gap_probability(None, box, 64, gram_fn=g)
    assert abs(d32 - d64) <= 1e-8


def test_gap_monotone_in_region():
    g = universal_gram(1)
    dets = [gap_probability(None, (-s, s), 48, gram_fn=g)
            for s in (0.25, 0.5, 1.0, 1.5, 2.0)]
    assert all(a >= b for a, b in zip(dets, dets[1:]))
    assert all(0.0 < d <= 1.0 for d in dets)


def test_fredholm_scalar_kernel_path_matches_gram_path():
    sinc = lambda x, y: universal_kernel(1, x, y)
    a = fredholm_det(sinc, lambda x: 0.5, (-0.5, 0.5), 24)
    b = fredholm_det(None, lambda x: 0.5, (-0.5, 0.5), 24,
                     gram_fn=universal_gram(1))
    assert a == pytest.approx(b, abs=1e-13)


# ---------------------------------------------------------------------------
# Laplace functionals against determinants

def _circle_setup(lam=3.5, replicas=20000, seed=19):
    model = mf.circle()
    basis = build_basis(model, lam)
    configs = sample_replicas(basis, model, seed=seed, n_replicas=replicas)
    gram = lambda nodes: projection_gram(basis, np.atleast_1d(nodes)[:, None])
    return model, basis, configs, gram


def test_laplace_functional_trivial_cases():
    model = mf.circle()
    basis = build_basis(model, 2.5)
    configs = sample_replicas(basis, model, seed=18, n_replicas=1000)
    mean, se = laplace_functional_mc(configs, lambda x: 1.0)
    assert (mean, se) == (1.0, 0.0)
    # whole-manifold region always contains the N >= 1 points
    p0, _ = empty_prob_mc(configs, Arc(0.0, 2 * math.pi))
    assert p0 == 0.0
    p1, _ = empty_prob_mc(configs, Arc(1.0, 1.0))
    assert p1 == 1.0


def test_empty_prob_rank_one():
    model = mf.circle()
    basis = build_basis(model, 0.0)
    configs = sample_replicas(basis, model, seed=20, n_replicas=2000)
    a = 1.2
    p, se = empty_prob_mc(configs, Arc(0.0, a))
    assert abs(p - (1 - a / (2 * math.pi))) <= 3 * se


def test_multiplicative_identity_five_test_functions():
    model, basis, configs, gram = _circle_setup()
    arc = Arc(0.0, 0.5)

    def bump(width):
        def h(theta):
            t = float(np.atleast_1d(theta)[0])
            if not arc.indicator(np.array([[t]]))[0]:
                return 1.0
            return 1.0 - 0.8 * math.exp(-0.5 * ((t - 0.25) / width) ** 2)
        return h

    def oscillating(theta):
        t = float(np.atleast_1d(theta)[0])
        if not arc.indicator(np.array([[t]]))[0]:
            return 1.0
        return 1.0 - 0.5 * (0.5 + 0.5 * math.sin(20 * t))

    def indicator(theta):
        t = float(np.atleast_1d(theta)[0])
        return 0.0 if arc.indicator(np.array([[t]]))[0] else 1.0

    def half(theta):
        t = float(np.atleast_1d(theta)[0])
        return 0.5 if arc.indicator(np.array([[t]]))[0] else 1.0

    for h in (indicator, half, bump(0.1), bump(0.02), oscillating):
        mc, se = laplace_functional_mc(configs, h)
        det = fredholm_det(None, lambda x: h(x), arc.quad_domain, 64,
                           gram_fn=gram)
        assert abs(mc - det) <= 3 * se


def test_empty_prob_matches_gap_probability():
    model, basis, configs, gram = _circle_setup(replicas=20000, seed=23)
    arc = Arc(0.0, 0.5)
    mc, se = empty_prob_mc(configs, arc)
    det = gap_probability(None, arc.quad_domain, 64, gram_fn=gram)
    assert abs(mc - det) <= 3 * se


def test_arc_indicator_wraparound():
    arc = Arc(6.0, 6.7)
    inside = arc.indicator(np.array([[6.2], [0.3], [1.0]]))
    assert inside.tolist() == [True, True, False]


def test_box_region():
    box = Box(((0.0, 1.0), (-1.0, 0.0)))
    flags = box.indicator(np.array([[0.5, -0.5], [1.5, -0.5], [0.5, 0.5]]))
    assert flags.tolist() == [True, False, False]


def test_fit_loglog_recovers_power():
    xs = [10.0, 20.0, 40.0, 80.0]
    ys = [3.0 * x**-1.25 for x in xs]
    fit = fit_loglog(xs, ys)
    assert fit["slope"] == pytest.approx(-1.25, abs=1e-12)
    assert fit["half_width95"] < 1e-10
