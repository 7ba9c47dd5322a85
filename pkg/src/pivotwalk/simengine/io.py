"""CSV / JSON artefacts. Floats are written with ``repr`` so they round-trip."""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .runner import RunLog

_INT_COLUMNS = {"sigma", "switch"}


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def write_table(path: str | Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


def read_table(path: str | Path) -> tuple[list[str], list[list[float]]]:
    with open(path, newline="") as fh:
        r = csv.reader(fh)
        header = next(r)
        return header, [[float(v) for v in row] for row in r]


def write_runlog(path: str | Path, log: RunLog) -> None:
    cols = log.columns
    ints = [c in _INT_COLUMNS for c in cols]
    rows = ([int(v) if is_int else float(v) for v, is_int in zip(row, ints)] for row in log.data)
    write_table(path, cols, rows)


def read_runlog(path: str | Path) -> RunLog:
    header, rows = read_table(path)
    if tuple(header) != RunLog.columns:
        raise ValueError(f"{path}: unexpected header {header}")
    return RunLog(np.array(rows, dtype=float).reshape(-1, len(header)))


def write_json(path: str | Path, obj) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")
