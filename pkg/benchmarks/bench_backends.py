"""Compiled versus pure-Python kernels on the bundled workloads.

    python benchmarks/bench_backends.py [--repeat N]
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from pivotwalk import _backend
from pivotwalk.configfile import load_run, load_sweep
from pivotwalk.simengine import gait_table, run_simulation, run_sweep


def _time(fn, repeat):
    out = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        out.append(time.perf_counter() - t0)
    return statistics.median(out)


def workloads():
    gb = load_run("eight_geometric_10deg").sim
    ob = load_run("eight_optim_10deg").sim
    fine = ob.with_(dt_integration=0.001)
    gait = load_run("straight_gait_6cm")
    sweep = load_sweep("sweep_63").spec
    return {
        "tracking, geometric (1257 ticks)": lambda b: run_simulation(gb, backend=b),
        "tracking, optimization (1257 ticks)": lambda b: run_simulation(ob, backend=b),
        "tracking, optimization, 100 substeps": lambda b: run_simulation(fine, backend=b),
        "gait grid, 359 angles": lambda b: gait_table(gait.sim, gait.angles, backend=b),
        "sweep, 63 cells x 5 reps": lambda b: run_sweep(sweep, backend=b),
    }


def check_identical():
    gb = load_run("eight_optim_30deg").sim
    a, _ = run_simulation(gb, backend="python")
    b, _ = run_simulation(gb, backend="cython")
    return np.array_equal(a.data, b.data)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    backends = _backend.available()
    if "cython" not in backends:
        print("compiled extension not built; only the Python kernels are available")
    print(f"{'workload':40s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for name, fn in workloads().items():
        times = {b: _time(lambda: fn(b), args.repeat) for b in backends}
        row = f"{name:40s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times.values())
        if len(times) > 1:
            row += f"{times['python'] / times['cython']:11.1f}x"
        print(row)
    if len(backends) > 1:
        print(f"outputs bit-identical: {check_identical()}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
