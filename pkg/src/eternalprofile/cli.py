"""Command-line interface.

Usage: eternalprofile <mode> --config <path> [--out <dir>] [--plots]
with mode one of solve, shoot, classify, asymptotics, phase, verify,
sweep.  The worker count for sweep mode can be overridden with the
ETERNAL_PROFILE_THREADS environment variable.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional

import numpy as np

from . import asymptotics, pdecheck, phasespace, shooting
from .config import MODES, RunConfig, load_config
from .errors import ProfileError
from .integrate import ClassifyTolerances, IntegratorOptions, integrate_profile
from .model import InterfaceCase, interface_case, make_params, exponents_from_beta
from .report import (
    RunReport,
    collect_versions,
    export_profile_csv,
    write_report,
)
from .solution import ProfileSolution
from .svgplot import line_chart


def _integrator_options(cfg: RunConfig) -> IntegratorOptions:
    return IntegratorOptions(
        rtol=cfg.rtol,
        atol=cfg.atol,
        delta0=cfg.delta0,
        contact_eps=cfg.contact_eps,
        horizon=cfg.horizon,
    )


def _classify_tolerances(cfg: RunConfig) -> ClassifyTolerances:
    return ClassifyTolerances(slope_tol=cfg.slope_tol)


def _profile_summary(sol: ProfileSolution) -> dict:
    return {
        "classification": sol.classification,
        "stop_reason": sol.stop_reason,
        "xi0": sol.xi0,
        "xi1": sol.xi1,
        "xi_max": sol.xi_max,
        "contact_F": sol.contact_F,
        "contact_slope": sol.contact_slope,
        "f_at_stop": float(sol.f_values[-1]),
        "grid_points": int(len(sol.grid)),
    }


def _solve(cfg: RunConfig) -> shooting.ShootingResult:
    p = make_params(cfg.m, cfg.q, cfg.N)
    return shooting.solve(
        p,
        beta_tol=cfg.beta_tol,
        opts=_integrator_options(cfg),
        tol=_classify_tolerances(cfg),
        use_seeds=cfg.use_seeds,
    )


def _run_solve(cfg: RunConfig, out: Path, plots: bool) -> dict:
    result = _solve(cfg)
    sol = result.final_profile
    export_profile_csv(sol, out / "profile.csv")
    if plots:
        xi = np.linspace(0.0, sol.xi_max, 400)
        line_chart(
            [("f", xi, sol.eval_f(xi))],
            out / "profile.svg",
            title="self-similar profile",
            xlabel="xi",
            ylabel="f",
        )
    slope_bound = (
        None
        if sol.xi0 is None
        else cfg.slope_tol * sol.xi0 ** sol.params.sigma
    )
    return {
        "beta_star": result.beta_star,
        "beta_star_str": result.beta_star_str,
        "alpha_star": result.alpha_star,
        "bracket_lo": result.bracket_lo,
        "bracket_hi": result.bracket_hi,
        "iterations": result.iterations,
        "slope_bound": slope_bound,
        "match_residual": (
            None if result.match is None else result.match.residual
        ),
        "matched_xi0": None if result.match is None else result.match.xi0,
        "history_length": len(result.history),
        "profile": _profile_summary(sol),
    }


def _run_classify(cfg: RunConfig, out: Path, plots: bool) -> dict:
    p = make_params(cfg.m, cfg.q, cfg.N)
    e = exponents_from_beta(p, cfg.beta)
    sol = integrate_profile(p, e, _integrator_options(cfg), _classify_tolerances(cfg))
    export_profile_csv(sol, out / "profile.csv")
    if plots:
        xi = np.linspace(0.0, sol.xi_max, 400)
        line_chart(
            [("f", xi, sol.eval_f(xi))],
            out / "profile.svg",
            title=f"profile at beta={cfg.beta:g}",
            xlabel="xi",
            ylabel="f",
        )
    return {"beta": cfg.beta, "profile": _profile_summary(sol)}


def _run_asymptotics(cfg: RunConfig, out: Path, plots: bool) -> dict:
    result = _solve(cfg)
    sol = result.final_profile
    expansion = asymptotics.predict_expansion(
        sol.params, sol.exps, float(sol.xi0)
    )
    xi0 = asymptotics.extrapolate_xi0(sol, expansion)
    expansion = asymptotics.predict_expansion(sol.params, sol.exps, xi0)
    sub = interface_case(sol.params) is InterfaceCase.SUB_CRITICAL
    fit = asymptotics.fit_interface(sol, with_second_order=sub)
    bounds = asymptotics.upper_bounds_check(sol)
    export_profile_csv(sol, out / "profile.csv")
    if plots:
        mask = (sol.grid >= fit.fit_window[0]) & (sol.grid <= fit.fit_window[1])
        d = xi0 - sol.grid[mask]
        line_chart(
            [
                ("computed", d, sol.f_values[mask]),
                ("predicted", d, expansion.amplitude * d**expansion.theta),
            ],
            out / "interface_fit.svg",
            title="interface expansion (log-log)",
            xlabel="xi0 - xi",
            ylabel="log10 f",
            logy=True,
        )
    return {
        "beta_star": result.beta_star,
        "xi0_corrected": xi0,
        "predicted": expansion,
        "fitted": fit,
        "bounds": bounds,
    }


def _run_phase(cfg: RunConfig, out: Path, plots: bool) -> dict:
    result = _solve(cfg)
    sol = result.final_profile
    portrait = phasespace.to_phase_coords(sol)
    lin = phasespace.linearize_at_origin(sol.params)
    tail = phasespace.stable_manifold_ratio(sol)
    limit = phasespace.limit_point_check(portrait)
    identity = phasespace.coordinate_identity_residual(portrait)
    export_profile_csv(sol, out / "profile.csv")
    if plots:
        line_chart(
            [("Y", portrait.eta_values, portrait.Y_values)],
            out / "phase_trajectory.svg",
            title="phase trajectory",
            xlabel="eta",
            ylabel="Y",
        )
    return {
        "beta_star": result.beta_star,
        "eigenvalues": list(lin.eigenvalues),
        "eigenvectors": [v.tolist() for v in lin.eigenvectors],
        "tail": tail,
        "limit_point": limit,
        "coordinate_identity_residual": identity,
        "eta_range": [float(portrait.eta_values[0]), float(portrait.eta_values[-1])],
    }


def _run_verify(cfg: RunConfig, out: Path, plots: bool) -> dict:
    result = _solve(cfg)
    sol = result.final_profile
    xi0 = float(sol.xi0)
    xi = np.linspace(0.05 * xi0, 0.9 * xi0, 200)
    ode_res = pdecheck.profile_ode_residual(sol, xi)
    # the origin stencil converges only like h^min(2, sigma) because of
    # the r^{sigma+2} series term of u^m, so the order check stays away
    # from r = 0
    r_grid = np.linspace(0.05 * xi0, 0.5 * xi0, 6)
    pde = pdecheck.pde_residual(sol, [-0.5, 0.0, 0.5], r_grid, h=1e-2)
    trace = pdecheck.eternal_trace(sol, (-2.0, 2.0), 5)
    export_profile_csv(sol, out / "profile.csv")
    if plots:
        line_chart(
            [("relative ODE residual", xi, ode_res)],
            out / "residual.svg",
            title="profile ODE residual",
            xlabel="xi",
            ylabel="log10 residual",
            logy=True,
        )
    return {
        "beta_star": result.beta_star,
        "ode_residual_max": float(ode_res.max()),
        "pde_residual": pde,
        "trace": [
            {
                "t": s.t,
                "support_radius": s.support_radius,
                "peak": float(s.u_values.max()),
                "mass": pdecheck.radial_mass(s, sol.params.N),
            }
            for s in trace
        ],
    }


def _sweep_job(args) -> tuple:
    key, m, q, N, beta, cfg_dict = args
    cfg = RunConfig(**cfg_dict)
    p = make_params(m, q, N)
    e = exponents_from_beta(p, beta)
    sol = integrate_profile(
        p, e, _integrator_options(cfg), _classify_tolerances(cfg)
    )
    return key, {
        "m": m,
        "q": q,
        "N": N,
        "beta": beta,
        "classification": sol.classification.value,
        "xi0": sol.xi0,
        "xi1": sol.xi1,
    }


def _run_sweep(cfg: RunConfig, out: Path, plots: bool) -> dict:
    jobs = []
    if cfg.sweep_betas:
        for i, beta in enumerate(cfg.sweep_betas):
            jobs.append((f"beta:{i:04d}", cfg.m, cfg.q, cfg.N, beta, cfg.to_dict()))
    for i, (m, q, N) in enumerate(cfg.sweep_params):
        beta = cfg.beta if cfg.beta is not None else 1.0
        jobs.append((f"params:{i:04d}", m, q, N, beta, cfg.to_dict()))
    workers = os.environ.get("ETERNAL_PROFILE_THREADS")
    workers = int(workers) if workers else min(4, os.cpu_count() or 1)
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = dict(pool.map(_sweep_job, jobs))
    else:
        results = dict(map(_sweep_job, jobs))
    # deterministic merge by job key
    table = [results[key] for key in sorted(results)]
    return {"jobs": table, "workers": workers}


_RUNNERS = {
    "solve": _run_solve,
    "shoot": _run_solve,
    "classify": _run_classify,
    "asymptotics": _run_asymptotics,
    "phase": _run_phase,
    "verify": _run_verify,
    "sweep": _run_sweep,
}


def run(cfg: RunConfig, out_dir=None, plots: Optional[bool] = None) -> RunReport:
    """Dispatch a validated configuration and write its artifacts."""
    out = Path(out_dir if out_dir is not None else cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    emit_plots = cfg.emit_plots if plots is None else plots
    report = RunReport(
        config=cfg.to_dict(),
        mode=cfg.mode,
        versions=collect_versions(),
    )
    start = time.monotonic()
    try:
        report.results = _RUNNERS[cfg.mode](cfg, out, emit_plots)
    except ProfileError as exc:
        report.status = "failed"
        report.results = {"error": f"{type(exc).__name__}: {exc}"}
    report.wall_time = time.monotonic() - start
    write_report(report, out / "report.json")
    return report


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="eternalprofile",
        description="Shooting solver for eternal self-similar profiles of "
        "degenerate diffusion with critically weighted strong absorption.",
    )
    sub = parser.add_subparsers(dest="mode", required=True)
    for mode in MODES:
        sp = sub.add_parser(mode)
        sp.add_argument("--config", required=True, help="key=value config file")
        sp.add_argument("--out", default=None, help="output directory")
        sp.add_argument(
            "--plots", action="store_true", help="emit SVG charts"
        )
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
    except ProfileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    cfg.mode = args.mode
    report = run(cfg, out_dir=args.out, plots=args.plots or None)
    if report.status != "ok":
        print(f"error: {report.results.get('error')}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
