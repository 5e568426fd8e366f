"""Command-line entry point.

Subcommands: presets, trajectory, simulate, phase, calibrate-p, calibrate-s,
track. Exit codes: 0 success, 2 configuration/validation error, 3 I/O error,
4 insufficient data.
"""

from __future__ import annotations

import argparse
import sys

from . import io as engine_io
from .calibration import (build_track, estimate_p, estimate_p_by_quarter,
                          estimate_s)
from .config import RunConfig, build_run_config
from .errors import ConfigError, EngineError, InsufficientDataError, ParamError
from .meanpath import mean_trajectory
from .montecarlo import simulate_ensemble
from .params import annual_to_quarterly
from .phase import iso_time_contours, sweep
from .presets import PRESETS, load_preset

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_DATA = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="engine",
        description="Debt-recycling simulation engine: mean paths, Monte "
                    "Carlo ensembles, phase diagrams and market calibration.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("presets", help="list preset names and values")

    traj = sub.add_parser("trajectory", help="deterministic mean path to CSV")
    _common_run_args(traj)
    traj.add_argument("--horizon", type=int, default=None,
                      help="quarters to evolve (default from config, 400)")
    traj.add_argument("--out", required=True, help="output CSV path")

    sim = sub.add_parser("simulate", help="Monte Carlo ensemble to JSON")
    _common_run_args(sim)
    sim.add_argument("--paths", type=int, required=True, help="number of paths")
    sim.add_argument("--seed", type=int, required=True, help="master seed")
    sim.add_argument("--out", required=True, help="output JSON path")

    phase = sub.add_parser("phase", help="phase-diagram sweep to CSV")
    phase.add_argument("--preset", required=True, help="country preset name")
    phase.add_argument("--config", default=None, help="key-value config file")
    phase.add_argument("--grid", default=None, metavar="N_PxN_S",
                       help="grid resolution, e.g. 201x201")
    phase.add_argument("--p-range", default=None, metavar="A,B",
                       help="success-probability range (default 0,1)")
    phase.add_argument("--s-range", default=None, metavar="A,B",
                       help="drift range (default: preset range)")
    phase.add_argument("--out", required=True, help="output CSV path")
    phase.add_argument("--contours", default=None, metavar="L1,L2",
                       help="iso-hitting-time levels in quarters")
    phase.add_argument("--contours-out", default=None,
                       help="output CSV for contour polylines")

    calp = sub.add_parser("calibrate-p", help="estimate p from daily closes")
    calp.add_argument("--input", required=True, help="daily CSV (date,close)")
    calp.add_argument("--by-quarter", action="store_true",
                      help="one estimate per calendar quarter")
    calp.add_argument("--out", required=True, help="output CSV path")

    cals = sub.add_parser("calibrate-s", help="estimate s from a quarterly index")
    cals.add_argument("--input", required=True,
                      help="quarterly CSV (year,quarter,index)")
    cals.add_argument("--out", required=True, help="output CSV path")

    track = sub.add_parser("track", help="join per-quarter p and s estimates")
    track.add_argument("--p-input", required=True,
                       help="CSV from calibrate-p --by-quarter")
    track.add_argument("--s-input", required=True, help="CSV from calibrate-s")
    track.add_argument("--out", required=True, help="output CSV path")

    return parser


def _common_run_args(cmd: argparse.ArgumentParser) -> None:
    cmd.add_argument("--preset", required=True, help="country preset name")
    cmd.add_argument("--config", default=None, help="key-value config file")
    cmd.add_argument("--p", type=float, required=True,
                     help="investment success probability")
    cmd.add_argument("--s", type=float, required=True,
                     help="quarterly housing drift")


def _resolve_config(args, extra: dict | None = None) -> RunConfig:
    preset = load_preset(args.preset)
    overrides: dict[str, float | int] = dict(extra or {})
    if getattr(args, "p", None) is not None:
        overrides["market.p"] = args.p
    if getattr(args, "s", None) is not None:
        overrides["market.s"] = args.s
    return build_run_config(preset=preset, config_path=args.config,
                            overrides=overrides)


def _cmd_presets(_args) -> int:
    for name, pr in PRESETS.items():
        print(f"{name}:")
        print(f"  ownership    {pr.ownership}")
        print(f"  r_b          {pr.r_b_annual:.4%}/yr "
              f"({annual_to_quarterly(pr.r_b_annual):.6%}/qtr)")
        print(f"  r_m          {pr.r_m_annual:.4%}/yr "
              f"({annual_to_quarterly(pr.r_m_annual):.6%}/qtr)")
        print(f"  tau_b        {pr.tau_b:.1%}")
        print(f"  tau_m        {pr.tau_m:.1%}")
        print(f"  s range      [{pr.s_range[0]:+.2%}, {pr.s_range[1]:+.2%}] per quarter")
    return EXIT_OK


def _cmd_trajectory(args) -> int:
    cfg = _resolve_config(
        args, {"sim.horizon": args.horizon} if args.horizon is not None else None)
    traj = mean_trajectory(cfg.loan, cfg.fiscal, cfg.market, cfg.horizon)
    engine_io.write_trajectory_csv(args.out, traj)
    print(f"wrote {len(traj)} quarters to {args.out}")
    return EXIT_OK


def _params_metadata(args, cfg: RunConfig) -> dict:
    r_m_annual, r_b_annual = cfg.fiscal_annual or (None, None)
    return {
        "preset": args.preset,
        "loan": {"ell": cfg.loan.ell, "mu": cfg.loan.mu, "e0": cfg.loan.e0,
                 "m0": cfg.loan.m0, "pi_star": cfg.loan.pi_star,
                 "q_skip": cfg.loan.q_skip},
        "fiscal_annual": {"r_m": r_m_annual, "r_b": r_b_annual},
        "fiscal_quarterly": {"r_m": cfg.fiscal.r_m, "r_b": cfg.fiscal.r_b,
                             "tau_m": cfg.fiscal.tau_m, "tau_b": cfg.fiscal.tau_b},
        "market": {"p": cfg.market.p, "s": cfg.market.s, "phi": cfg.market.phi},
        "horizon": cfg.horizon,
        "n_paths": cfg.n_paths,
        "master_seed": cfg.master_seed,
    }


def _cmd_simulate(args) -> int:
    cfg = _resolve_config(args, {"sim.n_paths": args.paths,
                                 "sim.seed": args.seed})
    stats = simulate_ensemble(cfg.loan, cfg.fiscal, cfg.market, cfg.horizon,
                              cfg.n_paths, cfg.master_seed)
    engine_io.write_ensemble_json(args.out, stats, _params_metadata(args, cfg))
    counts = {k.token: v for k, v in stats.outcome_counts.items()}
    print(f"simulated {stats.n_paths} paths: {counts}")
    print(f"wrote {args.out}")
    return EXIT_OK


def _parse_pair(text: str, flag: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ConfigError(f"{flag} expects 'a,b', got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise ConfigError(f"{flag} expects numbers, got {text!r}") from None


def _cmd_phase(args) -> int:
    preset = load_preset(args.preset)
    overrides: dict[str, float | int] = {}
    if args.grid is not None:
        try:
            n_p, _, n_s = args.grid.lower().partition("x")
            overrides["grid.n_p"] = int(n_p)
            overrides["grid.n_s"] = int(n_s)
        except ValueError:
            raise ConfigError(f"--grid expects N_PxN_S, got {args.grid!r}") from None
    if args.p_range is not None:
        overrides["grid.p_min"], overrides["grid.p_max"] = \
            _parse_pair(args.p_range, "--p-range")
    if args.s_range is not None:
        overrides["grid.s_min"], overrides["grid.s_max"] = \
            _parse_pair(args.s_range, "--s-range")
    cfg = build_run_config(preset=preset, config_path=args.config,
                           overrides=overrides, need_grid=True)
    grid = sweep(cfg.grid, cfg.loan, cfg.fiscal, phi=cfg.market.phi,
                 horizon=cfg.horizon)
    engine_io.write_grid_csv(args.out, grid)
    print(f"swept {cfg.grid.n_p}x{cfg.grid.n_s} cells "
          f"({grid.success_count()} success) to {args.out}")
    if args.contours is not None:
        if args.contours_out is None:
            raise ConfigError("--contours requires --contours-out")
        levels = [float(x) for x in args.contours.split(",") if x.strip()]
        contours = iso_time_contours(grid, levels)
        engine_io.write_contours_csv(args.contours_out, contours)
        n_seg = sum(len(v) for v in contours.values())
        print(f"wrote {n_seg} contour segments to {args.contours_out}")
    return EXIT_OK


def _cmd_calibrate_p(args) -> int:
    series = engine_io.read_daily_csv(args.input)
    if args.by_quarter:
        points = estimate_p_by_quarter(series)
        engine_io.write_p_quarters_csv(args.out, points)
        print(f"estimated p for {len(points)} quarters to {args.out}")
    else:
        est = estimate_p(series)
        engine_io.write_p_overall_csv(args.out, est)
        print(f"p_hat={est.p_hat:.6f} (N={est.n_days}, N+={est.n_positive})")
    return EXIT_OK


def _cmd_calibrate_s(args) -> int:
    series = engine_io.read_quarterly_csv(args.input)
    est = estimate_s(series)
    engine_io.write_s_drifts_csv(args.out, est.drifts)
    print(f"mean_drift={est.mean_drift:.6f} over {len(est.drifts)} quarters")
    return EXIT_OK


def _cmd_track(args) -> int:
    p_points = engine_io.read_p_quarters_csv(args.p_input)
    s_points = engine_io.read_s_drifts_csv(args.s_input)
    track = build_track(p_points, s_points)
    engine_io.write_track_csv(args.out, track)
    print(f"joined {len(track.points)} quarters to {args.out}")
    for label, missing in (("p", track.missing_p), ("s", track.missing_s)):
        if missing:
            quarters = ", ".join(f"{y}Q{q}" for y, q in missing)
            print(f"omitted (no {label} estimate): {quarters}", file=sys.stderr)
    return EXIT_OK


_COMMANDS = {
    "presets": _cmd_presets,
    "trajectory": _cmd_trajectory,
    "simulate": _cmd_simulate,
    "phase": _cmd_phase,
    "calibrate-p": _cmd_calibrate_p,
    "calibrate-s": _cmd_calibrate_s,
    "track": _cmd_track,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except InsufficientDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (ConfigError, ParamError, EngineError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
