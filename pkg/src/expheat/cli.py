"""Command-line front end and scenario runner.

Subcommands: ``evolve``, ``shoot``, ``scan-alpha``, ``orlicz-norm``, and
``experiment <name>`` with names global-decay, blowup, nonuniqueness,
mt-sharpness, degiorgi.  Configuration comes from an optional ``key=value``
file (UTF-8, ``#`` comments) plus repeatable ``--set key=value`` overrides;
unknown keys and out-of-range values are rejected by name.  Every run
writes CSV output and a ``summary.json`` into the output directory, and the
process exits 0 only if all checks asserted by the scenario pass.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .diagnostics import (
    DeGiorgiParams,
    SequenceLemmaCase,
    convexity_diagnostic,
    degiorgi_diagnostic,
    dissipation_check,
    sequence_lemma_check,
)
from .grid import (
    RadialField,
    TRUNCATED_PLANE,
    UNIT_DISC,
    build_grid,
    discrete_laplacian,
    energy,
    field_from_function,
    hat_weights,
)
from .heat import BLOWUP, COMPLETED, SolverConfig, evolve, write_run_csv
from .nonlinearity import DEFOCUSING, FOCUSING, FULL, PURE_EXP, Nonlinearity, superquadratic_margin
from .orlicz import embedding_check, luxemburg_norm, moser_field, mt_functional, mt_sharpness_scan
from .shooting import (
    NO_CROSSING,
    CROSSING,
    PROFILE_MAX_STEP,
    integrate_trajectory,
    scan_alpha,
    to_profile,
    write_profile_csv,
    write_scan_csv,
)

EXPERIMENTS = ("global-decay", "blowup", "nonuniqueness", "mt-sharpness", "degiorgi")


@dataclass
class RunConfig:
    nodes: int = 1024
    grading: float = 2.0
    radius: float = 12.0
    domain: str = TRUNCATED_PLANE
    sign: str = DEFOCUSING
    variant: str = FULL
    amplitude: float = 3.0
    width: float = 1.0
    t_end: float = 2.0
    dt_init: float = 5e-3
    dt_min: float = 1e-9
    theta: float = 0.5
    cfl_safety: float = 0.2
    u_max_blowup: float = 12.0
    snapshot_stride: int = 5
    alpha: float = 0.6
    alpha_min: float = 0.05
    alpha_max: float = 10.0
    alpha_count: int = 60
    t_max: float = 40.0
    tol: float = 1e-10
    profile: str = "gaussian"
    k: int = 8
    sub_radius: float = 0.0
    seed: int = 0
    sing_alpha: float = 0.6
    separation_threshold: float = 1e-3
    t0: float = 0.1
    alpha_dg: float = 4.0
    k_max: int = 8


_CHECKS = {
    "nodes": (int, lambda x: x >= 8, "an integer >= 8"),
    "grading": (float, lambda x: x > 0.0, "a positive real"),
    "radius": (float, lambda x: x > 0.0, "a positive real"),
    "domain": (str, lambda s: s in (UNIT_DISC, TRUNCATED_PLANE),
               f"one of {UNIT_DISC}|{TRUNCATED_PLANE}"),
    "sign": (str, lambda s: s in (FOCUSING, DEFOCUSING), "focusing|defocusing"),
    "variant": (str, lambda s: s in (FULL, PURE_EXP), "full|pure_exp"),
    "amplitude": (float, math.isfinite, "a finite real"),
    "width": (float, lambda x: x > 0.0, "a positive real"),
    "t_end": (float, lambda x: x > 0.0, "a positive real"),
    "dt_init": (float, lambda x: x > 0.0, "a positive real"),
    "dt_min": (float, lambda x: x > 0.0, "a positive real"),
    "theta": (float, lambda x: 0.0 <= x <= 1.0, "in [0, 1]"),
    "cfl_safety": (float, lambda x: x > 0.0, "a positive real"),
    "u_max_blowup": (float, lambda x: x > 0.0, "a positive real"),
    "snapshot_stride": (int, lambda x: x >= 1, "an integer >= 1"),
    "alpha": (float, lambda x: x >= 0.0, "a nonnegative real"),
    "alpha_min": (float, lambda x: x > 0.0, "a positive real"),
    "alpha_max": (float, lambda x: x > 0.0, "a positive real"),
    "alpha_count": (int, lambda x: x >= 2, "an integer >= 2"),
    "t_max": (float, lambda x: x > 0.0, "a positive real"),
    "tol": (float, lambda x: x > 0.0, "a positive real"),
    "profile": (str, lambda s: s in ("gaussian", "const", "moser", "random", "log_sqrt"),
                "gaussian|const|moser|random|log_sqrt"),
    "k": (int, lambda x: x >= 2, "an integer >= 2"),
    "sub_radius": (float, lambda x: x >= 0.0, "a nonnegative real (0 = whole domain)"),
    "seed": (int, lambda x: x >= 0, "a nonnegative integer"),
    "sing_alpha": (float, lambda x: x > 0.0, "a positive real"),
    "separation_threshold": (float, lambda x: x > 0.0, "a positive real"),
    "t0": (float, lambda x: x > 0.0, "a positive real"),
    "alpha_dg": (float, lambda x: x > 2.0, "a real > 2"),
    "k_max": (int, lambda x: x >= 1, "an integer >= 1"),
}


class ConfigError(ValueError):
    pass


def _apply_pair(cfg: RunConfig, key: str, raw: str) -> None:
    if key not in _CHECKS:
        raise ConfigError(f"unknown config key {key!r}")
    conv, ok, what = _CHECKS[key]
    try:
        val = conv(raw)
    except ValueError:
        raise ConfigError(f"config key {key!r}: cannot parse {raw!r} as {what}") from None
    if not ok(val):
        raise ConfigError(f"config key {key!r}: value {raw!r} must be {what}")
    setattr(cfg, key, val)


def parse_config(path: str | None, overrides: list[str] | None = None) -> RunConfig:
    """Line-based key=value file plus command-line overrides (which win)."""
    cfg = RunConfig()
    if path is not None:
        text = Path(path).read_text(encoding="utf-8")
        for lineno, line in enumerate(text.splitlines(), start=1):
            stripped = line.split("#", 1)[0].strip()
            if not stripped:
                continue
            if "=" not in stripped:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, raw = stripped.split("=", 1)
            _apply_pair(cfg, key.strip(), raw.strip())
    for item in overrides or []:
        if "=" not in item:
            raise ConfigError(f"--set needs key=value, got {item!r}")
        key, raw = item.split("=", 1)
        _apply_pair(cfg, key.strip(), raw.strip())
    return cfg


def _grid_from(cfg: RunConfig):
    radius = 1.0 if cfg.domain == UNIT_DISC else cfg.radius
    return build_grid(cfg.nodes, cfg.grading, cfg.domain, radius)


def _nl_from(cfg: RunConfig) -> Nonlinearity:
    return Nonlinearity(sign=cfg.sign, variant=cfg.variant)


def _solver_from(cfg: RunConfig, forced: tuple[float, ...] = ()) -> SolverConfig:
    return SolverConfig(
        dt_init=cfg.dt_init, dt_min=cfg.dt_min, theta=cfg.theta,
        cfl_safety=cfg.cfl_safety, t_end=cfg.t_end,
        u_max_blowup=cfg.u_max_blowup, snapshot_stride=cfg.snapshot_stride,
        store_fields=True, forced_times=forced,
    )


def _gaussian_field(cfg: RunConfig, grid) -> RadialField:
    return field_from_function(
        grid, lambda r: cfg.amplitude * np.exp(-((r / cfg.width) ** 2))
    )


def _log_sqrt_field(grid) -> RadialField:
    """u(r) = sqrt(ln(1/r)) sampled at positive radii; the r = 0 node is capped."""
    r = grid.nodes
    vals = np.empty_like(r)
    with np.errstate(divide="ignore"):
        vals[1:] = np.sqrt(np.maximum(-np.log(r[1:]), 0.0))
    vals[0] = vals[1]
    return RadialField(grid, vals)


def _summary(scenario, cfg, checks, metrics, started, experiment=None):
    return {
        "scenario": scenario,
        "experiment": experiment,
        "checks": checks,
        "all_checks_pass": bool(all(checks.values())) if checks else True,
        "metrics": metrics,
        "config": asdict(cfg),
        "tolerances": {
            "luxemburg_rel_tol": 1e-10,
            "embedding_slack": 1e-6,
            "bound_slack": 1e-2,
            "separation_threshold": cfg.separation_threshold,
        },
        "wall_clock_s": round(time.monotonic() - started, 3),
    }


def _write_summary(out_dir: Path, summary: dict) -> None:
    with open(out_dir / "summary.json", "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _snapshot_arrays(rec):
    t = rec.times
    linf = np.array([s.linf for s in rec.snapshots])
    j = np.array([s.energy_j for s in rec.snapshots])
    return t, linf, j


def run_evolve(cfg: RunConfig, out_dir: Path) -> dict:
    started = time.monotonic()
    grid = _grid_from(cfg)
    nl = _nl_from(cfg)
    rec = evolve(_gaussian_field(cfg, grid), nl, _solver_from(cfg))
    write_run_csv(rec, str(out_dir / "run.csv"))
    _, _, j = _snapshot_arrays(rec)
    checks = {"j_nonincreasing": bool(np.all(np.diff(j) <= 1e-10 * np.maximum(1.0, np.abs(j[:-1]))))}
    metrics = {
        "outcome": rec.outcome.kind,
        "t_detect": rec.outcome.t_detect,
        "steps": rec.step_count,
        "final_linf": rec.snapshots[-1].linf,
    }
    return _summary("evolve", cfg, checks, metrics, started)


def run_shoot(cfg: RunConfig, out_dir: Path) -> dict:
    started = time.monotonic()
    traj = integrate_trajectory(cfg.alpha, cfg.t_max, cfg.tol)
    with open(out_dir / "trajectory.csv", "w", encoding="utf-8") as fh:
        fh.write("t,y,ydot\n")
        for row in zip(traj.t, traj.y, traj.ydot):
            fh.write(",".join(f"{x:.17g}" for x in row) + "\n")
    c = traj.classification
    checks = {"ydot_nonincreasing": bool(np.all(np.diff(traj.ydot) <= 1e-8))}
    metrics = {
        "classification": c.kind,
        "t_cross": c.t_cross,
        "y_end": c.y_end,
        "ydot_end": c.ydot_end,
    }
    return _summary("shoot", cfg, checks, metrics, started)


def run_scan(cfg: RunConfig, out_dir: Path) -> dict:
    started = time.monotonic()
    if cfg.alpha_min >= cfg.alpha_max:
        raise ConfigError("config key 'alpha_min': must be below alpha_max")
    alphas = np.geomspace(cfg.alpha_min, cfg.alpha_max, cfg.alpha_count)
    table = scan_alpha(alphas, cfg.t_max, cfg.tol)
    write_scan_csv(table, str(out_dir / "scan.csv"))
    kinds = {row.kind for row in table.rows}
    windows = [
        (table.rows[i].alpha, table.rows[j].alpha) for i, j in table.windows()
    ]
    checks = {"found_both_classifications": CROSSING in kinds and NO_CROSSING in kinds}
    metrics = {"windows": windows, "n_rows": len(table.rows)}
    return _summary("scan-alpha", cfg, checks, metrics, started)


def run_orlicz(cfg: RunConfig, out_dir: Path) -> dict:
    started = time.monotonic()
    domain = UNIT_DISC if cfg.profile in ("moser", "log_sqrt", "const") else cfg.domain
    radius = 1.0 if domain == UNIT_DISC else cfg.radius
    grid = build_grid(cfg.nodes, cfg.grading, domain, radius)
    if cfg.profile == "const":
        field = field_from_function(grid, lambda r: np.full_like(r, cfg.amplitude))
    elif cfg.profile == "gaussian":
        field = _gaussian_field(cfg, grid)
    elif cfg.profile == "moser":
        field = moser_field(grid, cfg.k)
    elif cfg.profile == "log_sqrt":
        field = _log_sqrt_field(grid)
    else:  # random: seeded sum of bumps
        rng = np.random.default_rng(cfg.seed)
        r = grid.nodes
        vals = np.zeros_like(r)
        for _ in range(6):
            c, w, a = rng.uniform(0, radius), rng.uniform(0.05, 0.5) * radius, rng.uniform(-1, 1)
            vals += a * np.exp(-(((r - c) / w) ** 2))
        field = RadialField(grid, vals)
    sub = None if cfg.sub_radius == 0.0 else cfg.sub_radius
    norm = luxemburg_norm(field, sub_radius=sub)
    metrics = {"luxemburg_norm": norm, "sup": float(np.max(np.abs(field.values)))}
    checks = {}
    if norm > 0.0 and sub is None:
        two = luxemburg_norm(RadialField(grid, 2.0 * field.values))
        checks["homogeneity"] = abs(two - 2.0 * norm) <= 1e-8 * max(two, 2.0 * norm)
        for p in (2, 4, 6):
            rep = embedding_check(field, p)
            checks[f"embedding_p{p}"] = rep.ratio <= rep.bound * (1.0 + 1e-6)
            metrics[f"embedding_ratio_p{p}"] = rep.ratio
            metrics[f"embedding_bound_p{p}"] = rep.bound
    return _summary("orlicz-norm", cfg, checks, metrics, started)


def _experiment_global_decay(cfg: RunConfig, out_dir: Path, started) -> dict:
    grid = _grid_from(cfg)
    nl = Nonlinearity(sign=DEFOCUSING, variant=cfg.variant)
    rec = evolve(_gaussian_field(cfg, grid), nl, _solver_from(cfg))
    write_run_csv(rec, str(out_dir / "run.csv"))
    t, linf, j = _snapshot_arrays(rec)
    l2_0 = rec.snapshots[0].l2
    window = (t >= 0.01) & (t <= cfg.t_end)
    sup_linf = float(np.max(linf[window]))
    checks = {
        "completed": rec.outcome.kind == COMPLETED,
        "sup_bound_sqrt2": sup_linf <= math.sqrt(2.0) * l2_0 * 1.01,
        "j_nonincreasing": bool(np.all(np.diff(j) <= 1e-10 * np.maximum(1.0, np.abs(j[:-1])))),
    }
    metrics = {
        "sup_linf_window": sup_linf,
        "sqrt2_bound": math.sqrt(2.0) * l2_0,
        "l2_initial": l2_0,
    }
    for a in (3.0, 4.0, 8.0):
        const = 2.0 ** ((a * a + 10.0 * a - 12.0) / (2.0 * a * (a - 2.0)))
        bound_t = const * t[window] ** (-1.0 / a) * l2_0 * 1.01
        checks[f"decay_bound_alpha_{a:g}"] = bool(np.all(linf[window] <= bound_t))
        metrics[f"decay_const_alpha_{a:g}"] = const
    return _summary("experiment", cfg, checks, metrics, started, "global-decay")


def _experiment_blowup(cfg: RunConfig, out_dir: Path, started) -> dict:
    if cfg.domain != TRUNCATED_PLANE:
        raise ConfigError("config key 'domain': blowup experiment runs on the truncated plane")
    grid = _grid_from(cfg)
    nl = Nonlinearity(sign=FOCUSING, variant=FULL)

    def j_of(a: float) -> float:
        return energy(field_from_function(grid, lambda r: a * np.exp(-(r * r))), nl).energy_j

    lo, hi = 0.5, 4.0
    if j_of(lo) <= 0.0 or j_of(hi) > 0.0:
        raise ConfigError("amplitude bracket [0.5, 4] does not straddle the energy root")
    for _ in range(48):
        mid = 0.5 * (lo + hi)
        if j_of(mid) <= 0.0:
            hi = mid
        else:
            lo = mid
    a_star = hi  # the J <= 0 side of the bracket
    u0 = field_from_function(grid, lambda r: a_star * np.exp(-(r * r)))
    rec = evolve(u0, nl, _solver_from(cfg))
    write_run_csv(rec, str(out_dir / "run.csv"))
    _, _, j = _snapshot_arrays(rec)
    eps = superquadratic_margin(nl).inf_ratio
    alpha_probe = 1.05 * 2.0 / (2.0 + eps)
    conv = convexity_diagnostic(rec, alpha_probe)
    checks = {
        "energy_root_nonpositive": j_of(a_star) <= 0.0,
        "blowup_declared": rec.outcome.kind == BLOWUP,
        "j_nonincreasing": bool(np.all(np.diff(j) <= 1e-10 * np.maximum(1.0, np.abs(j[:-1])))),
        "convexity_holds_from_t_alpha": conv.t_alpha is not None,
        "dissipation_positive": conv.claim1_positive,
    }
    metrics = {
        "a_star": a_star,
        "t_detect": rec.outcome.t_detect,
        "margin_eps": eps,
        "alpha_probe": alpha_probe,
        "t_alpha": conv.t_alpha,
        "steps": rec.step_count,
    }
    return _summary("experiment", cfg, checks, metrics, started, "blowup")


def _experiment_nonuniqueness(cfg: RunConfig, out_dir: Path, started) -> dict:
    grid = build_grid(cfg.nodes, cfg.grading, UNIT_DISC, 1.0)
    nl = Nonlinearity(sign=FOCUSING, variant=FULL)
    # integrate just past the deepest grid node so the r=0 cap is consistent
    # with the neighboring sample
    t_needed = -math.log(grid.nodes[1])
    traj = integrate_trajectory(
        cfg.sing_alpha, t_needed + 0.5, cfg.tol, nl, max_step=PROFILE_MAX_STEP
    )
    if traj.classification.kind != NO_CROSSING:
        raise ConfigError(
            f"config key 'sing_alpha': slope {cfg.sing_alpha} leaves the "
            "non-crossing window"
        )
    q = to_profile(traj, grid)
    write_profile_csv(q, str(out_dir / "profile.csv"))

    resid_field = discrete_laplacian(q.field).values + nl.f(q.field.values)
    annulus = (grid.nodes >= 0.05) & (grid.nodes <= 0.95)
    sub_w = hat_weights(grid.nodes[annulus])
    resid = math.sqrt(float(sub_w @ resid_field[annulus] ** 2))

    solver = SolverConfig(
        dt_init=1e-3, dt_min=1e-5, theta=1.0, cfl_safety=cfg.cfl_safety,
        t_end=0.05, u_max_blowup=cfg.u_max_blowup,
        snapshot_stride=cfg.snapshot_stride, store_fields=True,
        forced_times=(0.01, 0.05),
    )
    rec = evolve(q.field, nl, solver)
    write_run_csv(rec, str(out_dir / "run.csv"))
    t, linf, _ = _snapshot_arrays(rec)
    sup_001 = float(linf[np.argmin(np.abs(t - 0.01))])
    sup_005 = float(linf[np.argmin(np.abs(t - 0.05))])
    diff = rec.u_final - q.field.values
    sep = math.sqrt(float(grid.weights @ (diff * diff)))
    checks = {
        "completed": rec.outcome.kind == COMPLETED,
        "smoothing_below_cap": sup_005 < q.cap_value and sup_001 < q.cap_value,
        "separated_from_stationary": sep > cfg.separation_threshold,
        "stationary_residual_small": resid < cfg.separation_threshold,
    }
    metrics = {
        "cap_value": q.cap_value,
        "sup_t_0.01": sup_001,
        "sup_t_0.05": sup_005,
        "l2_separation": sep,
        "stationarity_residual_l2": resid,
        "sing_alpha": cfg.sing_alpha,
    }
    return _summary("experiment", cfg, checks, metrics, started, "nonuniqueness")


def _experiment_mt_sharpness(cfg: RunConfig, out_dir: Path, started) -> dict:
    grid = build_grid(cfg.nodes, cfg.grading, UNIT_DISC, 1.0)
    ks = (2, 4, 8, 16, 32, 64)
    alphas = (2.0 * math.pi, 4.0 * math.pi, 5.0 * math.pi)
    table = mt_sharpness_scan(grid, alphas, ks)
    with open(out_dir / "moser.csv", "w", encoding="utf-8") as fh:
        fh.write("alpha,k,ratio,functional,l2_squared\n")
        for i, a in enumerate(table.alphas):
            for jj, k in enumerate(table.ks):
                fh.write(
                    f"{a:.17g},{k},{table.ratios[i, jj]:.17g},"
                    f"{table.functionals[i, jj]:.17g},{table.l2_squared[jj]:.17g}\n"
                )
    sub = table.ratios[0]  # 2*pi
    sup = table.ratios[2]  # 5*pi
    k8 = ks.index(8)
    closed = mt_functional(_log_sqrt_field(grid), 1.0)
    checks = {
        "subcritical_bounded": bool(sub[-1] / sub[0] < 10.0),
        "supercritical_increasing": bool(np.all(np.diff(sup[k8:]) > 0.0)),
        "supercritical_unbounded": bool(sup[-1] / sup[0] > 10.0),
        "closed_form_pi": abs(closed - math.pi) <= 0.01 * math.pi,
    }
    metrics = {
        "ratios_2pi": [float(x) for x in sub],
        "ratios_4pi": [float(x) for x in table.ratios[1]],
        "ratios_5pi": [float(x) for x in sup],
        "closed_form_value": closed,
        "seminorms": [float(x) for x in table.seminorms],
    }
    return _summary("experiment", cfg, checks, metrics, started, "mt-sharpness")


def _experiment_degiorgi(cfg: RunConfig, out_dir: Path, started) -> dict:
    grid = _grid_from(cfg)
    nl = Nonlinearity(sign=DEFOCUSING, variant=FULL)
    rec = evolve(_gaussian_field(cfg, grid), nl, _solver_from(cfg))
    write_run_csv(rec, str(out_dir / "run.csv"))
    m_level = math.sqrt(2.0) * rec.snapshots[0].l2
    params = DeGiorgiParams(m_level=m_level, t0=cfg.t0, alpha_dg=cfg.alpha_dg, k_max=cfg.k_max)
    rep = degiorgi_diagnostic(rec, params)
    with open(out_dir / "degiorgi.csv", "w", encoding="utf-8") as fh:
        fh.write("k,c_k,U_k\n")
        for k2 in range(len(rep.u_levels)):
            fh.write(f"{k2},{rep.levels[k2]:.17g},{rep.u_levels[k2]:.17g}\n")
    lemma_ok = True
    lemma_conv = True
    for c_const in (2.0, 3.0):
        for beta in (1.5, 2.0):
            star = c_const ** (-1.0 / (beta - 1.0) ** 2)
            for x0 in (star, star / 2.0):
                res = sequence_lemma_check(SequenceLemmaCase(c_const, beta, x0))
                lemma_ok = lemma_ok and res.bound_ok
                lemma_conv = lemma_conv and res.converged_to_zero
    checks = {
        "u_levels_nonincreasing": rep.nonincreasing,
        "u_levels_below_1e6_by_k8": bool(rep.u_levels[min(8, cfg.k_max)] < 1e-6),
        "recursion_holds": bool(np.all(rep.recursion_ok)),
        "sequence_lemma_bounds": lemma_ok,
        "sequence_lemma_converges": lemma_conv,
    }
    metrics = {
        "m_level": m_level,
        "u_levels": [float(x) for x in rep.u_levels],
        "a_const": rep.a_const,
        "c_const": rep.c_const,
    }
    return _summary("experiment", cfg, checks, metrics, started, "degiorgi")


_EXPERIMENT_RUNNERS = {
    "global-decay": _experiment_global_decay,
    "blowup": _experiment_blowup,
    "nonuniqueness": _experiment_nonuniqueness,
    "mt-sharpness": _experiment_mt_sharpness,
    "degiorgi": _experiment_degiorgi,
}


def run_experiment(name: str, cfg: RunConfig, out_dir: Path) -> dict:
    if name not in _EXPERIMENT_RUNNERS:
        raise ConfigError(
            f"unknown experiment {name!r}; valid choices: {', '.join(EXPERIMENTS)}"
        )
    started = time.monotonic()
    return _EXPERIMENT_RUNNERS[name](cfg, out_dir, started)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="expheat",
        description="Radial semilinear heat equation laboratory",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("evolve", "shoot", "scan-alpha", "orlicz-norm"):
        p = sub.add_parser(name)
        _common_flags(p)
    p = sub.add_parser("experiment")
    p.add_argument("name", help=f"one of: {', '.join(EXPERIMENTS)}")
    _common_flags(p)
    return parser


def _common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", default=None, help="key=value config file")
    p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                   help="override a config key (repeatable)")
    p.add_argument("--out", default="runs", help="output directory")


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = parse_config(args.config, args.set)
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        if args.command == "evolve":
            summary = run_evolve(cfg, out_dir)
        elif args.command == "shoot":
            summary = run_shoot(cfg, out_dir)
        elif args.command == "scan-alpha":
            summary = run_scan(cfg, out_dir)
        elif args.command == "orlicz-norm":
            summary = run_orlicz(cfg, out_dir)
        else:
            summary = run_experiment(args.name, cfg, out_dir)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _write_summary(out_dir, summary)
    for name, ok in summary["checks"].items():
        print(f"[{'PASS' if ok else 'FAIL'}] {name}")
    print(f"summary: {out_dir / 'summary.json'}")
    return 0 if summary["all_checks_pass"] else 1


if __name__ == "__main__":
    sys.exit(main())
