"""Parametric sweeps with per-cell seeds, optionally in parallel."""

from __future__ import annotations

import itertools
import math
import statistics
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from ..controllers import GaitParams
from .config import SimConfig, SweepSpec
from .runner import run_simulation


def cell_seed(seed: int, cell: int, rep: int) -> int:
    return int(np.random.SeedSequence([seed, cell, rep]).generate_state(1, np.uint64)[0] >> np.uint64(1))


def cell_key(sweep_angle: float, tilt_angle: float, dt_path: float, controller: str) -> str:
    return (
        f"sweep_angle={math.degrees(sweep_angle):g}deg,tilt_angle={math.degrees(tilt_angle):g}deg,"
        f"dt_path={dt_path:g}s,controller={controller}"
    )


def _cells(spec: SweepSpec):
    grid = itertools.product(spec.sweep_angles, spec.tilt_angles, spec.dt_paths, spec.controllers)
    for i, (sa, ta, dp, (name, ctrl)) in enumerate(grid):
        cfg = spec.base.with_(
            gait=GaitParams(sweep_angle=sa, tilt_angle=ta, desired_sweep=spec.base.gait.desired_sweep),
            dt_path=dp,
            controller=ctrl,
        )
        yield i, (sa, ta, dp, name), cfg


def _run_one(cfg: SimConfig, backend: str | None):
    _, m = run_simulation(cfg, backend)
    return m.normalized_error, m.n_steps, m.mean_error


def run_sweep(spec: SweepSpec, workers: int = 1, backend: str | None = None) -> dict:
    """Per-cell ME (mean NE over repetitions), variance and SD.

    Repetitions differ only in their noise seed. Variance is the unbiased
    sample variance and is 0 for a single repetition. Output is ordered by
    grid coordinates whatever the worker count.
    """
    cells = list(_cells(spec))
    tasks = [
        cfg.with_(seed=cell_seed(spec.seed, i, r))
        for i, _, cfg in cells
        for r in range(spec.repetitions)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_run_one, tasks, itertools.repeat(backend), chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        results = [_run_one(t, backend) for t in tasks]
    out = {}
    reps = spec.repetitions
    for (i, (sa, ta, dp, name), _), chunk in zip(cells, (results[j:j + reps] for j in range(0, len(results), reps))):
        ne = [float(c[0]) for c in chunk]
        # exact rational arithmetic: identical repetitions give exactly 0
        var = statistics.variance(ne) if reps > 1 else 0.0
        out[cell_key(sa, ta, dp, name)] = {
            "sweep_angle_deg": math.degrees(sa),
            "tilt_angle_deg": math.degrees(ta),
            "dt_path_s": dp,
            "controller": name,
            "repetitions": reps,
            "NE": ne,
            "ME": statistics.fmean(ne),
            "variance": var,
            "SD": math.sqrt(var),
            "mean_n_steps": float(np.mean([c[1] for c in chunk])),
            "mean_error_m": float(np.mean([c[2] for c in chunk])),
        }
    return {"cells": out, "n_cells": len(out)}
