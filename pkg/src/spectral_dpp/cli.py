"""Command-line front end.

Each subcommand resolves its configuration (flags override an optional
key=value file), runs the corresponding pipeline, and writes a CSV table
plus a JSON report next to it (`--out` is the path prefix).  With
`--plot`, a rendered figure lands alongside.  Exit codes: 0 success,
2 configuration error, 3 numerical-consistency failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from . import analysis, figures
from .analysis import Arc, EstimatorReport
from .kernel import (projection_gram, scaled_kernel, tabulate,
                     universal_kernel)
from .manifold import ManifoldModel, TangentChart, from_name, validate_point
from .sampler import (DegenerateFeatureError, EnvelopeViolationError,
                      pull_back, sample_replicas)
from .spectrum import build_basis

COMMANDS = ("weyl", "kernel", "sample", "converge", "gap", "pcf", "laplace")


class ConfigError(Exception):
    """Invalid or incomplete experiment configuration."""


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _floats(text: str) -> list[float]:
    return [float(t) for t in str(text).split(",") if t != ""]


def _write_csv(path: str, columns, rows) -> None:
    with open(path, "w") as fh:
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _write_points_csv(path: str, configs) -> None:
    arity = max((c.points.shape[1] for c in configs if len(c)), default=1)
    columns = ["replica", "index", "space"] + [f"c{i+1}" for i in range(arity)]
    with open(path, "w") as fh:
        fh.write(",".join(columns) + "\n")
        for cfg in configs:
            for i, pt in enumerate(cfg.points):
                coords = [_fmt(float(v)) for v in pt]
                coords += [""] * (arity - len(coords))
                fh.write(",".join([str(cfg.replica_index), str(i), cfg.space]
                                  + coords) + "\n")


def _write_report(path: str, command: str, config: dict, results: dict,
                  errors_se: dict, slopes: dict, runtime: float) -> None:
    doc = {"command": command, "config": config, "results": results,
           "errors_se": errors_se, "slopes": slopes,
           "runtime_seconds": runtime}
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")


def _report_parts(report: EstimatorReport):
    results = dict(report.tables)
    errors_se = {}
    for key, val in report.scalars.items():
        results[key] = val["value"]
        if val["se"] is not None:
            errors_se[key] = val["se"]
    if report.notes:
        results["notes"] = report.notes
    return results, errors_se, report.slopes


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectral-dpp",
        description="Spectral-projection point processes on model manifolds")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--manifold", help="circle | torus:m | sphere2")
        p.add_argument("--lambda", dest="lam", help="spectral cutoff")
        p.add_argument("--lambdas", help="comma-separated cutoffs")
        p.add_argument("--point", help="base point coordinates, comma-separated")
        p.add_argument("--eps", help="chart radius (comma list allowed)")
        p.add_argument("--replicas", help="number of replicas")
        p.add_argument("--seed", help="random seed")
        p.add_argument("--out", help="output path prefix")
        p.add_argument("--threads", help="worker thread cap")
        p.add_argument("--quad-order", dest="quad_order", help="quadrature order")
        p.add_argument("--config", help="key=value configuration file")
        p.add_argument("--plot", action="store_true", default=None,
                       help="render a figure beside the outputs")
        if name == "gap" or name == "laplace":
            p.add_argument("--arc", help="arc length on the circle")
        if name == "laplace":
            p.add_argument("--h-value", dest="h_value",
                           help="value of the test function on the arc")
        if name in ("kernel", "converge"):
            p.add_argument("--grid-max", dest="grid_max", help="grid extent")
            p.add_argument("--grid-points", dest="grid_points",
                           help="grid points per dimension")
        if name == "kernel":
            p.add_argument("--kind", help="scaled | universal")
        if name == "pcf":
            p.add_argument("--window", help="chart window half-width")
            p.add_argument("--rmax", help="largest separation")
            p.add_argument("--bins", help="number of separation bins")
    return parser


def _load_config_file(path: str) -> dict:
    if not os.path.exists(path):
        raise ConfigError(f"config file not found: {path}")
    values = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"malformed config line: {raw.strip()!r}")
            key, _, val = line.partition("=")
            key = key.strip().replace("-", "_")
            values["lam" if key == "lambda" else key] = val.strip()
    return values


def _parse_bool(text) -> bool:
    if isinstance(text, bool):
        return text
    if str(text).lower() in ("1", "true", "yes", "on"):
        return True
    if str(text).lower() in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


_CASTS = {
    "manifold": str, "lam": float, "lambdas": _floats, "point": _floats,
    "eps": _floats, "replicas": int, "seed": int, "out": str, "threads": int,
    "quad_order": int, "arc": float, "h_value": float, "grid_max": float,
    "grid_points": int, "kind": str, "window": float, "rmax": float,
    "bins": int, "plot": _parse_bool,
}


def resolve_config(args: argparse.Namespace) -> dict:
    """Merge config-file values under the flags and cast everything."""
    raw = {}
    if getattr(args, "config", None):
        raw.update(_load_config_file(args.config))
    for key in _CASTS:
        flag = getattr(args, key, None)
        if flag is not None:
            raw[key] = flag
    cfg = {"command": args.command}
    for key, val in raw.items():
        if key not in _CASTS:
            raise ConfigError(f"unknown configuration key: {key}")
        try:
            cfg[key] = _CASTS[key](val)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad value for {key}: {val!r} ({exc})")
    cfg.setdefault("seed", 0)
    cfg.setdefault("threads", os.cpu_count() or 1)
    cfg.setdefault("quad_order", 64)
    cfg.setdefault("out", args.command)
    cfg.setdefault("plot", False)
    return cfg


def _require(cfg: dict, *keys):
    for key in keys:
        if key not in cfg:
            raise ConfigError(f"{cfg['command']} requires --{key.replace('_', '-')}")


def _model(cfg: dict) -> ManifoldModel:
    _require(cfg, "manifold")
    try:
        return from_name(cfg["manifold"])
    except ValueError as exc:
        raise ConfigError(str(exc))


def _base_point(cfg: dict, model: ManifoldModel) -> np.ndarray:
    if "point" in cfg:
        pt = np.asarray(cfg["point"], dtype=float)
        if model.kind == "sphere2":
            norm = np.linalg.norm(pt)
            if norm == 0:
                raise ConfigError("sphere base point must be nonzero")
            pt = pt / norm
    else:
        pt = np.zeros(model.coord_dim)
        if model.kind == "sphere2":
            pt[2] = 1.0
    try:
        return validate_point(model, pt)
    except ValueError as exc:
        raise ConfigError(str(exc))


def _eps_list(cfg: dict, model: ManifoldModel) -> list[float]:
    eps = cfg.get("eps")
    if eps is None:
        return [model.injectivity_radius / 2.0]
    return list(eps)


def _lambdas(cfg: dict) -> list[float]:
    if "lambdas" in cfg:
        return list(cfg["lambdas"])
    if "lam" in cfg:
        return [cfg["lam"]]
    raise ConfigError(f"{cfg['command']} requires --lambda or --lambdas")


# ---------------------------------------------------------------------------
# command runners; each returns (results, errors_se, slopes, plot_fn)

def _run_weyl(cfg):
    model = _model(cfg)
    report = analysis.weyl_check(model, _lambdas(cfg))
    results, errors_se, slopes = _report_parts(report)
    _write_csv(cfg["out"] + ".csv", report.tables["counts"]["columns"],
               report.tables["counts"]["rows"])
    return results, errors_se, slopes, figures.weyl_figure


def _run_converge(cfg):
    model = _model(cfg)
    lams = _lambdas(cfg)
    if len(lams) < 2:
        raise ConfigError("converge needs at least two cutoffs")
    p = _base_point(cfg, model)
    grid = analysis.default_chart_grid(
        model.dim, cfg.get("grid_max", 4.0),
        cfg.get("grid_points"))
    report = analysis.kernel_convergence(model, p, _eps_list(cfg, model),
                                         lams, grid)
    results, errors_se, slopes = _report_parts(report)
    _write_csv(cfg["out"] + ".csv",
               report.tables["sup_difference"]["columns"],
               report.tables["sup_difference"]["rows"])
    return results, errors_se, slopes, figures.converge_figure


def _run_kernel(cfg):
    model = _model(cfg)
    kind = cfg.get("kind", "scaled")
    extent = cfg.get("grid_max", 4.0)
    per_dim = cfg.get("grid_points", 9 if model.dim > 1 else 17)
    axis = np.linspace(-extent, extent, per_dim)
    if model.dim == 1:
        grid = axis[:, None]
    else:
        mesh = np.meshgrid(*([axis] * model.dim), indexing="ij")
        grid = np.column_stack([g.ravel() for g in mesh])
    if kind == "universal":
        table = tabulate(lambda u, v: universal_kernel(model.dim, u, v),
                         grid, grid, {"kind": "universal", "m": model.dim})
    elif kind == "scaled":
        lam = _lambdas(cfg)[0]
        basis = build_basis(model, lam)
        chart = TangentChart.at(model, _base_point(cfg, model), lam=lam,
                                epsilon=_eps_list(cfg, model)[0])
        table = tabulate(lambda u, v: scaled_kernel(basis, chart, u, v),
                         grid, grid,
                         {"kind": "scaled", "lambda": lam, "m": model.dim})
    else:
        raise ConfigError(f"unknown kernel kind: {kind}")
    m = model.dim
    columns = [f"u{i+1}" for i in range(m)] + [f"v{i+1}" for i in range(m)] \
        + ["value"]
    rows = []
    for i, u in enumerate(table.u_points):
        for j, v in enumerate(table.v_points):
            rows.append(list(u) + list(v) + [table.values[i, j]])
    _write_csv(cfg["out"] + ".csv", columns, rows)
    results = {"kind": kind, "grid_points": int(grid.shape[0]),
               "max_abs_value": float(np.abs(table.values).max())}
    return results, {}, {}, lambda rep: figures.kernel_figure(rep, table)


def _run_sample(cfg):
    model = _model(cfg)
    lam = _lambdas(cfg)[0]
    _require(cfg, "replicas")
    basis = build_basis(model, lam)
    configs = sample_replicas(basis, model, cfg["seed"], cfg["replicas"],
                              threads=cfg["threads"])
    _write_points_csv(cfg["out"] + ".csv", configs)
    results = {"replicas": len(configs), "points_per_replica": basis.size,
               "basis_size": basis.size}
    return results, {}, {}, lambda rep: figures.sample_figure(rep, configs)


def _gap_gram(model, basis):
    if model.dim != 1:
        raise ConfigError("gap and laplace support circle or torus:1")

    def gram(nodes):
        return projection_gram(basis, np.atleast_1d(nodes)[:, None])

    return gram


def _run_gap(cfg):
    model = _model(cfg)
    lam = _lambdas(cfg)[0]
    _require(cfg, "arc")
    arc = Arc(0.0, cfg["arc"])
    basis = build_basis(model, lam)
    gram = _gap_gram(model, basis)
    order = cfg["quad_order"]
    dets = [analysis.gap_probability(None, arc.quad_domain, n, gram_fn=gram)
            for n in (order, 2 * order)]
    results = {"orders": [order, 2 * order], "determinants": dets,
               "gap": dets[0], "self_convergence": abs(dets[0] - dets[1])}
    _write_csv(cfg["out"] + ".csv", ["order", "determinant"],
               list(zip(results["orders"], dets)))
    return results, {}, {}, figures.gap_figure


def _run_laplace(cfg):
    model = _model(cfg)
    lam = _lambdas(cfg)[0]
    _require(cfg, "arc", "replicas")
    arc = Arc(0.0, cfg["arc"])
    c = cfg.get("h_value", 0.0)
    basis = build_basis(model, lam)
    configs = sample_replicas(basis, model, cfg["seed"], cfg["replicas"],
                              threads=cfg["threads"])

    def h(x):
        return c if arc.indicator(np.atleast_1d(x)[None, :])[0] else 1.0

    mc, se = analysis.laplace_functional_mc(configs, h)
    det = analysis.fredholm_det(None, lambda x: c, arc.quad_domain,
                                cfg["quad_order"],
                                gram_fn=_gap_gram(model, basis))
    results = {"mc_value": mc, "mc_se": se, "determinant": det,
               "abs_diff": abs(mc - det),
               "diff_over_se": abs(mc - det) / se if se > 0 else 0.0}
    _write_csv(cfg["out"] + ".csv",
               ["mc_value", "mc_se", "determinant", "abs_diff"],
               [[mc, se, det, abs(mc - det)]])
    return results, {"mc_value": se}, {}, figures.laplace_figure


def _run_pcf(cfg):
    model = _model(cfg)
    lam = _lambdas(cfg)[0]
    _require(cfg, "replicas")
    window = cfg.get("window", 6.0)
    rmax = cfg.get("rmax", window)
    nbins = cfg.get("bins", 12)
    basis = build_basis(model, lam)
    chart = TangentChart.at(model, _base_point(cfg, model), lam=lam,
                            epsilon=_eps_list(cfg, model)[0])
    configs = sample_replicas(basis, model, cfg["seed"], cfg["replicas"],
                              threads=cfg["threads"])
    charts = [pull_back(c, chart) for c in configs]
    edges = np.linspace(0.0, rmax, nbins + 1)
    report = analysis.estimate_pcf(charts, edges, window,
                                   basis=basis, chart=chart)
    results, errors_se, slopes = _report_parts(report)
    _write_csv(cfg["out"] + ".csv", report.tables["pcf"]["columns"],
               report.tables["pcf"]["rows"])
    return results, errors_se, slopes, figures.pcf_figure


_RUNNERS = {"weyl": _run_weyl, "kernel": _run_kernel, "sample": _run_sample,
            "converge": _run_converge, "gap": _run_gap, "pcf": _run_pcf,
            "laplace": _run_laplace}


def run_command(argv) -> int:
    """Execute one subcommand; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        cfg = resolve_config(args)
        results, errors_se, slopes, plot_fn = _RUNNERS[args.command](cfg)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except (EnvelopeViolationError, DegenerateFeatureError) as exc:
        print(f"numerical-consistency failure: {exc}", file=sys.stderr)
        return 3
    runtime = time.perf_counter() - start
    report = {"command": args.command, "config": _jsonable(cfg),
              "results": _jsonable(results), "errors_se": _jsonable(errors_se),
              "slopes": _jsonable(slopes), "runtime_seconds": runtime}
    _write_report(cfg["out"] + ".json", args.command, _jsonable(cfg),
                  _jsonable(results), _jsonable(errors_se),
                  _jsonable(slopes), runtime)
    if cfg.get("plot"):
        figures.save_figure(plot_fn(report), cfg["out"] + ".png")
    return 0


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    return obj


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
