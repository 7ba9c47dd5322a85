"""Gain tuning for the eight-shape tracking runs.

No gains are published for these runs, so they are fitted to the reported
step counts:

1. Geometric controller: pick ``k`` on a grid minimising
   ``(n10/296 - 1)**2 + (n30/71 - 1)**2``, where ``nX`` is the number of
   pivot switches over one period at an ``X`` degree sweep angle.
2. Optimization controller: over ``sigma0_mode x omega_max x eta`` pick the
   point minimising ``(n10/269 - 1)**2 + (n30/75 - 1)**2`` among runs whose
   mean tracking error stays below one body length at both sweep angles
   (a run that loses the path can still hit a step count).

Tracking-error orderings between the controllers are *not* part of the
objective; they are checked afterwards by the acceptance tests.

Run ``python -m pivotwalk.tuning`` to repeat the search.
"""

from __future__ import annotations

import argparse
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .controllers import GaitParams, GeometricGains, OptimGains
from .kinematics import RobotGeometry, RobotState
from .simengine import GeometricController, OptimController, SimConfig, run_simulation
from .trajectories import EightShape

TARGETS = {"geometric": (296, 71), "optimization": (269, 75)}
ANGLES_DEG = (10.0, 30.0)

K_GRID = tuple(float(k) for k in range(100, 1001, 5))
OMEGA_MAX_GRID = tuple(float(v) for v in np.round(np.arange(0.6, 4.0001, 0.01), 2))
ETA_GRID = tuple(float(v) for v in np.geomspace(1e5, 1e8, 31))
SIGMA0_GRID = ("accumulate", "zero", "sign")


def eight_config(controller, sweep_deg: float) -> SimConfig:
    return SimConfig(
        geometry=RobotGeometry(0.01),
        initial_state=RobotState(0.0, -0.042, 0.5 * math.pi),
        controller=controller,
        gait=GaitParams(math.radians(sweep_deg)),
        t_f=40.0 * math.pi,
        path=EightShape(0.04, 0.04, 0.1, 0.05),
        dt_path=0.1,
    )


@dataclass(frozen=True)
class Trial:
    params: tuple
    steps: tuple[int, ...]
    mean_error: tuple[float, ...]
    score: float


def _trial(controller, params, target) -> Trial:
    steps, errs = [], []
    for deg in ANGLES_DEG:
        _, m = run_simulation(eight_config(controller, deg))
        steps.append(m.n_steps)
        errs.append(m.mean_error)
    score = sum((n / t - 1.0) ** 2 for n, t in zip(steps, target))
    return Trial(params, tuple(steps), tuple(errs), score)


def tune_geometric(k_grid=K_GRID) -> Trial:
    trials = [_trial(GeometricController(GeometricGains(k)), (k,), TARGETS["geometric"]) for k in k_grid]
    return min(trials, key=lambda t: t.score)


def tune_optim(
    omega_grid=OMEGA_MAX_GRID, eta_grid=ETA_GRID, modes=SIGMA0_GRID, error_bound: float = 0.01
) -> Trial | None:
    best = None
    for mode, wm, eta in itertools.product(modes, omega_grid, eta_grid):
        gains = OptimGains(eta=eta, omega_max=wm, sigma0_mode=mode)
        t = _trial(OptimController(gains), (mode, wm, eta), TARGETS["optimization"])
        if max(t.mean_error) > error_bound:
            continue
        if best is None or t.score < best.score:
            best = t
    return best


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--quick", action="store_true", help="coarse grids")
    args = ap.parse_args(argv)
    kg, og, eg = K_GRID, OMEGA_MAX_GRID, ETA_GRID
    if args.quick:
        kg, og, eg = kg[::4], og[::5], eg[::3]
    g = tune_geometric(kg)
    print(f"geometric: k={g.params[0]:g} steps={g.steps} mean_error_mm="
          f"{tuple(round(e * 1e3, 3) for e in g.mean_error)} score={g.score:.5f}")
    o = tune_optim(og, eg)
    if o is None:
        print("optimization: no admissible gains")
        return 1
    mode, wm, eta = o.params
    print(f"optimization: sigma0_mode={mode} omega_max={wm:g} eta={eta!r} steps={o.steps} "
          f"mean_error_mm={tuple(round(e * 1e3, 3) for e in o.mean_error)} score={o.score:.5f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
