"""Command-line front end.

Exit codes: 0 success, 1 invalid configuration, 2 simulation failure.
Nothing is written when validation fails.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from dataclasses import replace
from pathlib import Path

from . import __version__
from .configfile import ConfigError, load_run, load_sweep, parse_angle_spec
from .simengine import (
    GeometricController,
    OptimController,
    RunMetrics,
    SimConfig,
    SimulationError,
    StraightLineGait,
    gait_table,
    run_simulation,
    run_sweep,
)
from .simengine.io import write_json, write_runlog, write_table

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUNTIME = 2


def _overrides(sim: SimConfig, args) -> SimConfig:
    if args.seed is not None:
        if args.seed < 0:
            raise ConfigError("--seed", "must be non-negative")
        sim = sim.with_(seed=args.seed)
    if args.integrator is not None:
        sim = sim.with_(integrator=args.integrator)
    if args.paper_literal_sign:
        if not isinstance(sim.controller, OptimController):
            raise ConfigError("--paper-literal-sign", "applies only to the optimization controller")
        sim = sim.with_(controller=OptimController(replace(sim.controller.gains, paper_literal_sign=True)))
    return sim


def _describe(sim: SimConfig) -> str:
    c = sim.controller
    if isinstance(c, GeometricController):
        return f"geometric (k={c.gains.k:g})"
    if isinstance(c, OptimController):
        g = c.gains
        sign = ", ascent sign" if g.paper_literal_sign else ""
        return (f"optimization (eta={g.eta:g}, omega_max={g.omega_max:g} rad/s, "
                f"theta_weight={g.theta_weight:g}, sigma0_mode={g.sigma0_mode}{sign})")
    return f"straight-line gait (goal={c.goal_distance * 1e3:g} mm, omega={c.omega_nominal:g} rad/s)"


def _summary(title: str, sim: SimConfig, m: RunMetrics) -> str:
    L = sim.geometry.length
    sweep = sim.gait.desired_sweep if isinstance(sim.controller, StraightLineGait) else sim.gait.sweep_angle
    lines = [
        title,
        "",
        f"controller        {_describe(sim)}",
        f"robot length      {L * 1e3:g} mm",
        f"sweep angle       {math.degrees(sweep):g} deg",
        f"integrator        {sim.integrator}",
        f"seed              {sim.seed}",
        "",
        f"n_steps           {m.n_steps}",
        f"NE                {m.normalized_error:.6g}",
        f"mean error        {m.mean_error * 1e3:.6g} mm",
        f"final error       {m.final_error * 1e3:.6g} mm",
        f"travel distance   {m.travel_distance * 1e3:.6g} mm",
    ]
    if m.steps_fractional is not None:
        lines.append(f"steps (fraction)  {m.steps_fractional:.6g}")
    return "\n".join(lines) + "\n"


def cmd_simulate(args) -> int:
    rf = load_run(args.config)
    sim = _overrides(rf.sim, args)
    log, m = run_simulation(sim)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_runlog(out / "runlog.csv", log)
    write_json(out / "metrics.json", m.as_dict())
    (out / "summary.txt").write_text(_summary(f"simulate: {rf.source.stem}", sim, m))
    print(f"n_steps={m.n_steps} mean_error={m.mean_error * 1e3:.4g} mm wall_time={m.wall_time:.3f} s")
    return EXIT_OK


def cmd_gait_analysis(args) -> int:
    rf = load_run(args.config)
    sim = _overrides(rf.sim, args)
    if not isinstance(sim.controller, StraightLineGait):
        raise ConfigError("controller.type", "gait-analysis needs straight_line_gait")
    angles = parse_angle_spec(args.angles) if args.angles else rf.angles
    if angles is None:
        raise ConfigError("analysis.angles", "no angle grid in the config and no --angles given")
    for a in angles:
        if not 0.0 < a < 2.0 * math.pi:
            raise ConfigError("angles", f"{math.degrees(a):g} deg is outside (0, 360) deg")
    t0 = time.perf_counter()
    rows = gait_table(sim, angles)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_table(out / "steps_vs_angle.csv", ("sweep_angle", "sweep_angle_deg", "n_steps", "steps_fractional"),
                ((r.sweep_angle, math.degrees(r.sweep_angle), r.n_steps, r.steps_fractional) for r in rows))
    write_table(out / "distance_vs_angle.csv", ("sweep_angle", "sweep_angle_deg", "travel_distance"),
                ((r.sweep_angle, math.degrees(r.sweep_angle), r.travel_distance) for r in rows))
    print(f"{len(rows)} angles in {time.perf_counter() - t0:.2f} s")
    return EXIT_OK


def cmd_sweep(args) -> int:
    sf = load_sweep(args.config)
    spec = sf.spec
    if args.seed is not None:
        if args.seed < 0:
            raise ConfigError("--seed", "must be non-negative")
        spec = replace(spec, seed=args.seed)
    if args.integrator is not None:
        spec = replace(spec, base=spec.base.with_(integrator=args.integrator))
    if args.paper_literal_sign:
        ctrls = tuple(
            (n, OptimController(replace(c.gains, paper_literal_sign=True)) if isinstance(c, OptimController) else c)
            for n, c in spec.controllers
        )
        if ctrls == spec.controllers:
            raise ConfigError("--paper-literal-sign", "no optimization controller in the sweep")
        spec = replace(spec, controllers=ctrls)
    workers = args.workers if args.workers is not None else sf.workers
    if workers < 1:
        raise ConfigError("--workers", "must be >= 1")
    t0 = time.perf_counter()
    result = run_sweep(spec, workers=workers)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_json(out / "sweep.json", result)
    print(f"{result['n_cells']} cells in {time.perf_counter() - t0:.2f} s")
    return EXIT_OK


def cmd_compare(args) -> int:
    if len(args.config) != 2:
        raise ConfigError("--config", "compare needs exactly two --config options")
    runs = [load_run(c) for c in args.config]
    a, b = (_overrides_lenient(r.sim, args) for r in runs)
    if args.paper_literal_sign and not any(isinstance(s.controller, OptimController) for s in (a, b)):
        raise ConfigError("--paper-literal-sign", "applies only to the optimization controller")
    if a.path != b.path:
        raise ConfigError("path", "the two configs track different paths")
    if a.gait != b.gait:
        raise ConfigError("gait", "the two configs use different gait parameters")
    if (a.t_f, a.dt_path, a.control_step, a.integration_step) != (b.t_f, b.dt_path, b.control_step, b.integration_step):
        raise ConfigError("timing", "the two configs use different timing")
    if any(isinstance(s.controller, StraightLineGait) for s in (a, b)):
        raise ConfigError("controller.type", "compare needs tracking controllers")
    la, ma = run_simulation(a)
    lb, mb = run_simulation(b)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_table(out / "compare.csv", ("t", "e_n_a", "e_n_b"),
                zip(la.t, la.column("e_n"), lb.column("e_n")))
    (out / "compare_summary.txt").write_text(_compare_summary(runs, (a, b), (ma, mb)))
    return EXIT_OK


def _overrides_lenient(sim: SimConfig, args) -> SimConfig:
    ns = argparse.Namespace(**{**vars(args), "paper_literal_sign": False})
    sim = _overrides(sim, ns)
    if args.paper_literal_sign and isinstance(sim.controller, OptimController):
        sim = sim.with_(controller=OptimController(replace(sim.controller.gains, paper_literal_sign=True)))
    return sim


def _compare_summary(runs, sims, metrics) -> str:
    names = [r.source.stem for r in runs]
    ma, mb = metrics
    lines = ["compare", ""]
    for tag, name, sim, m in zip("ab", names, sims, metrics):
        lines += [
            f"[{tag}] {name}: {_describe(sim)}",
            f"    n_steps      {m.n_steps}",
            f"    mean error   {m.mean_error * 1e3:.6g} mm",
            f"    NE           {m.normalized_error:.6g}",
        ]
    lines.append("")
    if ma.mean_error == mb.mean_error:
        lines.append("lower mean e_n:  tie")
    else:
        lines.append(f"lower mean e_n:  {'a' if ma.mean_error < mb.mean_error else 'b'}")
    if ma.n_steps == mb.n_steps:
        lines.append("fewer steps:     tie")
    else:
        lines.append(f"fewer steps:     {'a' if ma.n_steps < mb.n_steps else 'b'}")
    hi = max(ma.n_steps, mb.n_steps)
    rel = abs(ma.n_steps - mb.n_steps) / hi if hi else 0.0
    lines.append(f"step difference: {abs(ma.n_steps - mb.n_steps)} ({100 * rel:.3g}% of the larger count)")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pivotwalk", description="Pivot-walking millirobot simulation.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, multi=False):
        if multi:
            p.add_argument("--config", action="append", required=True,
                           help="config file or bundled name (give twice)")
        else:
            p.add_argument("--config", required=True, help="config file or bundled name")
        p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--seed", type=int, default=None, help="override the config seed")
        p.add_argument("--integrator", choices=("arc", "euler"), default=None)
        p.add_argument("--paper-literal-sign", action="store_true",
                       help="gradient controller adds eta*grad instead of subtracting it")
        return p

    common(sub.add_parser("simulate", help="single closed-loop run")).set_defaults(func=cmd_simulate)
    g = common(sub.add_parser("gait-analysis", help="steps and distance versus sweep angle"))
    g.add_argument("--angles", default=None, help="degrees, 'start:stop:step' or comma list")
    g.set_defaults(func=cmd_gait_analysis)
    s = common(sub.add_parser("sweep", help="parametric sweep"))
    s.add_argument("--workers", type=int, default=None)
    s.set_defaults(func=cmd_sweep)
    common(sub.add_parser("compare", help="two controllers on the same path"), multi=True).set_defaults(
        func=cmd_compare)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"invalid configuration: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (SimulationError, ArithmeticError) as e:
        print(f"simulation failed: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
