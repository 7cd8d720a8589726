"""Figure rendering for CLI reports.

Each renderer takes the command's report dictionary and returns a
matplotlib Figure; `save_figure` writes it next to the delimited output.
Rendering is opt-in from the CLI, so the core pipelines never import
pyplot implicitly.
"""
from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

_FIG_KW = {"figsize": (6.4, 4.0), "dpi": 150}


def save_figure(fig, path: str) -> str:
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
    return path


def _rows(report: dict, table: str):
    t = report["results"][table]
    return t["columns"], t["rows"]


def weyl_figure(report: dict):
    cols, rows = _rows(report, "counts")
    lam = [r[cols.index("lambda")] for r in rows]
    ratio = [r[cols.index("ratio")] for r in rows]
    resid = [abs(r[cols.index("residual")]) for r in rows]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.0, 3.6), dpi=150)
    ax1.plot(lam, ratio, "o-")
    ax1.axhline(1.0, color="k", lw=0.8, ls=":")
    ax1.set_xlabel(r"$\lambda$")
    ax1.set_ylabel("count / leading term")
    nz = [(l, r) for l, r in zip(lam, resid) if r > 0]
    if nz:
        ax2.loglog([p[0] for p in nz], [p[1] for p in nz], "s-")
    ax2.set_xlabel(r"$\lambda$")
    ax2.set_ylabel("|residual|")
    fig.suptitle(f"eigenvalue counting: {report['config'].get('manifold', '')}")
    fig.tight_layout()
    return fig


def converge_figure(report: dict):
    cols, rows = _rows(report, "sup_difference")
    lam = [r[0] for r in rows]
    fig, ax = plt.subplots(**_FIG_KW)
    for k, name in enumerate(cols[1:]):
        ax.loglog(lam, [r[k + 1] for r in rows], "o-", label=name)
    slopes = report.get("slopes", {})
    lines = [f"{k}: slope {v['slope']:.3f}" for k, v in slopes.items()]
    if lines:
        ax.set_title("; ".join(lines), fontsize=9)
    ax.set_xlabel(r"$\lambda$")
    ax.set_ylabel("sup kernel difference")
    ax.legend(fontsize=8)
    fig.tight_layout()
    return fig


def pcf_figure(report: dict):
    cols, rows = _rows(report, "pcf")
    mid = [(r[0] + r[1]) / 2 for r in rows]
    g = [r[2] for r in rows]
    se = [r[3] for r in rows]
    fig, ax = plt.subplots(**_FIG_KW)
    ax.errorbar(mid, g, yerr=[3 * s for s in se], fmt="o", ms=3, capsize=2,
                label="estimate (3 s.e.)")
    if "g2_finite" in cols:
        ax.plot(mid, [r[cols.index("g2_finite")] for r in rows], "-",
                label="finite-scale prediction")
        ax.plot(mid, [r[cols.index("g2_limit")] for r in rows], "--",
                label="limit")
    ax.axhline(1.0, color="k", lw=0.8, ls=":")
    ax.set_xlabel("separation r")
    ax.set_ylabel(r"$g_2(r)$")
    ax.legend(fontsize=8)
    fig.tight_layout()
    return fig


def sample_figure(report: dict, configs):
    fig, ax = plt.subplots(**_FIG_KW)
    pts = configs[0].points
    model = report["config"].get("manifold", "")
    if pts.shape[1] == 3:
        lon = [math.atan2(y, x) for x, y, _ in pts]
        lat = [math.asin(max(-1.0, min(1.0, z))) for _, _, z in pts]
        ax.plot(lon, lat, ".", ms=3)
        ax.set_xlabel("longitude")
        ax.set_ylabel("latitude")
    elif pts.shape[1] == 2:
        ax.plot(pts[:, 0], pts[:, 1], ".", ms=3)
        ax.set_aspect("equal")
    else:
        ax.plot(pts[:, 0], [0.0] * len(pts), "|", ms=14)
        ax.set_yticks([])
    ax.set_title(f"replica 0 of {model}", fontsize=9)
    fig.tight_layout()
    return fig


def kernel_figure(report: dict, table):
    fig, ax = plt.subplots(**_FIG_KW)
    im = ax.imshow(table.values, origin="lower", aspect="auto", cmap="RdBu_r")
    fig.colorbar(im, ax=ax, label="kernel value")
    ax.set_xlabel("v index")
    ax.set_ylabel("u index")
    ax.set_title(str(table.meta.get("kind", "kernel")), fontsize=9)
    fig.tight_layout()
    return fig


def gap_figure(report: dict):
    res = report["results"]
    orders = res["orders"]
    dets = res["determinants"]
    fig, ax = plt.subplots(**_FIG_KW)
    ax.plot(orders, dets, "o-")
    ax.set_xlabel("quadrature order")
    ax.set_ylabel("gap probability")
    ax.set_title(f"self-convergence {res['self_convergence']:.2e}", fontsize=9)
    fig.tight_layout()
    return fig


def laplace_figure(report: dict):
    res = report["results"]
    fig, ax = plt.subplots(**_FIG_KW)
    ax.errorbar([0], [res["mc_value"]], yerr=[3 * res["mc_se"]], fmt="o",
                capsize=4, label="Monte Carlo (3 s.e.)")
    ax.plot([1], [res["determinant"]], "s", label="determinant")
    ax.set_xticks([0, 1], ["MC", "det"])
    ax.set_ylabel("multiplicative functional")
    ax.legend(fontsize=8)
    fig.tight_layout()
    return fig
