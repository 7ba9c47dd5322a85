"""YAML run configurations.

Dimensioned values carry unit suffixes (``"10 mm"``, ``"0.1 s"``,
``"0.05 rad/s"``); bare numbers are accepted only for angles (degrees) and
for dimensionless settings. Unknown keys are rejected. Every problem is
raised as :class:`ConfigError` naming the offending key.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Callable

import yaml

from .controllers import SIGMA0_MODES, GaitParams, GeometricGains, OptimGains
from .kinematics import RobotGeometry, RobotState
from .simengine.config import (
    GeometricController,
    NoiseSpec,
    OptimController,
    SimConfig,
    StraightLineGait,
    SweepSpec,
)
from .trajectories import EightShape, StraightLine, load_waypoints
from .units import UnitError, parse_quantity


class ConfigError(ValueError):
    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


def bundled_names() -> list[str]:
    root = resources.files("pivotwalk") / "configs"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".yaml"))


def resolve(path_or_name: str | Path) -> Path:
    """A file path, or the name of a bundled config."""
    p = Path(path_or_name)
    if p.is_file():
        return p
    name = p.name[:-5] if p.name.endswith(".yaml") else p.name
    if p.parent == Path(".") and name in bundled_names():
        return Path(str(resources.files("pivotwalk") / "configs" / f"{name}.yaml"))
    raise ConfigError("config", f"no such file or bundled config: {path_or_name}")


def load_yaml(path: Path) -> dict:
    try:
        with open(path) as fh:
            doc = yaml.safe_load(fh)
    except OSError as e:
        raise ConfigError("config", f"cannot read {path}: {e.strerror}") from None
    except yaml.YAMLError as e:
        raise ConfigError("config", f"invalid YAML in {path}: {e}") from None
    if not isinstance(doc, dict):
        raise ConfigError("config", f"{path} must contain a mapping")
    return doc


class _Section:
    """Mapping reader that records which keys were consumed."""

    def __init__(self, data: Any, key: str):
        if not isinstance(data, dict):
            raise ConfigError(key, "expected a mapping")
        self.data = data
        self.key = key
        self.used: set[str] = set()

    def path(self, name: str) -> str:
        return f"{self.key}.{name}" if self.key else name

    def has(self, name: str) -> bool:
        return name in self.data

    def raw(self, name: str, default: Any = ...):
        self.used.add(name)
        if name not in self.data:
            if default is ...:
                raise ConfigError(self.path(name), "required key is missing")
            return default
        return self.data[name]

    def qty(self, name: str, kind: str, default: Any = ...):
        if default is not ... and name not in self.data:
            self.used.add(name)
            return default
        v = self.raw(name)
        try:
            return parse_quantity(v, kind)
        except UnitError as e:
            raise ConfigError(self.path(name), str(e)) from None

    def number(self, name: str, default: Any = ...) -> float:
        v = self.raw(name, default)
        if isinstance(v, str):
            # YAML 1.1 reads "1e5" (no dot) as a string
            try:
                v = float(v)
            except ValueError:
                pass
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            raise ConfigError(self.path(name), f"expected a finite number, got {v!r}")
        return float(v)

    def integer(self, name: str, default: Any = ...) -> int:
        v = self.raw(name, default)
        if isinstance(v, bool) or not isinstance(v, int):
            raise ConfigError(self.path(name), f"expected an integer, got {v!r}")
        return v

    def choice(self, name: str, options, default: Any = ...) -> str:
        v = self.raw(name, default)
        if v not in options:
            raise ConfigError(self.path(name), f"must be one of {sorted(options)}, got {v!r}")
        return v

    def flag(self, name: str, default: bool = False) -> bool:
        v = self.raw(name, default)
        if not isinstance(v, bool):
            raise ConfigError(self.path(name), f"expected true/false, got {v!r}")
        return v

    def sub(self, name: str, default: Any = ...) -> "_Section | None":
        v = self.raw(name, default)
        if v is None:
            return None
        return _Section(v, self.path(name))

    def done(self) -> None:
        extra = sorted(set(self.data) - self.used)
        if extra:
            raise ConfigError(self.path(extra[0]), "unknown key")


def _build(key: str, fn: Callable, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except ValueError as e:
        if isinstance(e, ConfigError):
            raise
        raise ConfigError(key, str(e)) from None


def _angle_in_open_circle(sec: _Section, name: str, default: Any = ...):
    present = sec.has(name)
    v = sec.qty(name, "angle", default)
    if present and not 0.0 < v < 2.0 * math.pi:
        raise ConfigError(sec.path(name), "must lie in (0, 360) deg, i.e. (0, 2*pi) rad")
    return v


def _path(sec: _Section, base_dir: Path):
    kind = sec.choice("type", {"eight", "straight", "waypoints"})
    if kind == "eight":
        spec = _build(sec.key, EightShape,
                      sec.qty("amp_x", "length"), sec.qty("amp_y", "length"),
                      sec.qty("freq_x", "angular_rate"), sec.qty("freq_y", "angular_rate"))
    elif kind == "straight":
        spec = _build(sec.key, StraightLine,
                      (sec.qty("origin_x", "length", 0.0), sec.qty("origin_y", "length", 0.0)),
                      sec.qty("heading", "angle"), sec.qty("length", "length"), sec.qty("speed", "speed"))
    else:
        f = sec.raw("file")
        if not isinstance(f, str):
            raise ConfigError(sec.path("file"), "expected a file name")
        p = Path(f) if Path(f).is_absolute() else base_dir / f
        try:
            spec = load_waypoints(p)
        except OSError as e:
            raise ConfigError(sec.path("file"), f"cannot read {p}: {e.strerror}") from None
        except ValueError as e:
            raise ConfigError(sec.path("file"), str(e)) from None
    sec.done()
    return spec


def _controller(sec: _Section):
    kind = sec.choice("type", {"geometric", "optimization", "straight_line_gait"})
    if kind == "geometric":
        c = GeometricController(_build(sec.path("k"), GeometricGains, sec.number("k")))
    elif kind == "optimization":
        gains = _build(
            sec.key, OptimGains,
            eta=sec.number("eta"),
            omega_max=sec.qty("omega_max", "angular_rate", 2.0 * math.pi),
            theta_weight=sec.number("theta_weight", 0.0),
            sigma0_mode=sec.choice("sigma0_mode", SIGMA0_MODES, "accumulate"),
            paper_literal_sign=sec.flag("paper_literal_sign", False),
        )
        c = OptimController(gains)
    else:
        c = _build(sec.key, StraightLineGait,
                   sec.qty("goal_distance", "length"), sec.qty("omega_nominal", "angular_rate"))
    sec.done()
    return c


def _angle_grid(v: Any, key: str) -> tuple[float, ...]:
    return _grid(v, key, "angle")


def _grid(v: Any, key: str, kind: str) -> tuple[float, ...]:
    """A list of quantities or an inclusive ``{start, stop, step}`` range."""
    if isinstance(v, list):
        if not v:
            raise ConfigError(key, "grid is empty")
        out = []
        for i, item in enumerate(v):
            try:
                out.append(parse_quantity(item, kind))
            except UnitError as e:
                raise ConfigError(f"{key}[{i}]", str(e)) from None
        return tuple(out)
    sec = _Section(v, key)
    start, stop, step = sec.qty("start", kind), sec.qty("stop", kind), sec.qty("step", kind)
    sec.done()
    if step <= 0 or stop < start:
        raise ConfigError(key, "need step > 0 and stop >= start")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return tuple(start + i * step for i in range(n))


def parse_angle_spec(text: str) -> tuple[float, ...]:
    """``"start:stop:step"`` in degrees (inclusive), or a comma list of degrees."""
    try:
        if ":" in text:
            a, b, c = (float(p) for p in text.split(":"))
            if c <= 0 or b < a:
                raise ValueError
            n = int(math.floor((b - a) / c + 1e-9)) + 1
            degs = [a + i * c for i in range(n)]
        else:
            degs = [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise ConfigError("angles", f"cannot parse angle grid {text!r}") from None
    if not degs:
        raise ConfigError("angles", "grid is empty")
    return tuple(math.radians(d) for d in degs)


@dataclass(frozen=True)
class RunFile:
    sim: SimConfig
    angles: tuple[float, ...] | None
    source: Path


def parse_sim(doc: dict, base_dir: Path, key: str = "") -> tuple[SimConfig, tuple[float, ...] | None]:
    top = _Section(doc, key)
    top.raw("name", None)
    geo = top.sub("geometry")
    geom = _build(geo.path("length"), RobotGeometry, geo.qty("length", "length"))
    geo.done()

    s0 = top.sub("initial_state")
    init = _build(s0.key, RobotState, s0.qty("x", "length"), s0.qty("y", "length"), s0.qty("theta", "angle"))
    s0.done()

    ctrl = _controller(top.sub("controller"))

    g = top.sub("gait")
    desired = _angle_in_open_circle(g, "desired_sweep", None)
    if isinstance(ctrl, StraightLineGait):
        if desired is None:
            raise ConfigError(g.path("desired_sweep"), "required for the straight-line gait")
        sweep = _angle_in_open_circle(g, "sweep_angle", desired)
    else:
        sweep = _angle_in_open_circle(g, "sweep_angle")
    gait = _build(g.key, GaitParams, sweep, g.qty("tilt_angle", "angle", 0.0), desired)
    g.done()

    path = None
    p = top.sub("path", None)
    if p is not None:
        path = _path(p, base_dir)

    tm = top.sub("timing")
    timing = dict(
        t_f=tm.qty("t_f", "time", None),
        dt_path=tm.qty("dt_path", "time", 0.1),
        dt_control=tm.qty("dt_control", "time", None),
        dt_integration=tm.qty("dt_integration", "time", None),
    )
    tm.done()

    nz = top.sub("noise", None)
    noise = NoiseSpec()
    if nz is not None:
        noise = _build(nz.key, NoiseSpec,
                       nz.qty("omega_jitter_std", "angular_rate", 0.0),
                       nz.qty("pivot_slip_std", "length", 0.0))
        nz.done()

    integrator = top.choice("integrator", {"arc", "euler"}, "arc")
    seed = top.integer("seed", 0)

    angles = None
    an = top.sub("analysis", None)
    if an is not None:
        angles = _angle_grid(an.raw("angles"), an.path("angles"))
        an.done()
    top.done()

    if not isinstance(ctrl, StraightLineGait):
        if timing["t_f"] is None:
            raise ConfigError(tm.path("t_f"), "required for tracking controllers")
        if path is None:
            raise ConfigError(top.path("path"), "required for tracking controllers")
    try:
        sim = SimConfig(geometry=geom, initial_state=init, controller=ctrl, gait=gait, path=path,
                        integrator=integrator, noise=noise, seed=seed, **timing)
    except ValueError as e:
        where = tm.key if ("dt_" in str(e) or "t_f" in str(e)) else (key or "config")
        raise ConfigError(where, str(e)) from None
    return sim, angles


def load_run(path_or_name: str | Path) -> RunFile:
    p = resolve(path_or_name)
    sim, angles = parse_sim(load_yaml(p), p.parent)
    return RunFile(sim, angles, p)


@dataclass(frozen=True)
class SweepFile:
    spec: SweepSpec
    workers: int
    source: Path


def load_sweep(path_or_name: str | Path) -> SweepFile:
    p = resolve(path_or_name)
    top = _Section(load_yaml(p), "")
    top.raw("name", None)
    b = top.raw("base")
    if isinstance(b, str):
        bp = Path(b)
        if not bp.is_absolute() and (p.parent / bp).is_file():
            bp = p.parent / bp
        try:
            bpath = resolve(bp if bp.is_file() else b)
        except ConfigError:
            raise ConfigError("base", f"no such file or bundled config: {b}") from None
        base, _ = parse_sim(load_yaml(bpath), bpath.parent, "")
    else:
        base, _ = parse_sim(b, p.parent, "base")

    gr = top.sub("grid")
    sweep_angles = _angle_grid(gr.raw("sweep_angle"), gr.path("sweep_angle")) if gr.has("sweep_angle") \
        else (base.gait.sweep_angle,)
    for i, a in enumerate(sweep_angles):
        if not 0 < a < 2 * math.pi:
            raise ConfigError(f"grid.sweep_angle[{i}]", "must lie in (0, 360) deg, i.e. (0, 2*pi) rad")
    tilts = _angle_grid(gr.raw("tilt_angle"), gr.path("tilt_angle")) if gr.has("tilt_angle") \
        else (base.gait.tilt_angle,)
    dts = _grid(gr.raw("dt_path"), gr.path("dt_path"), "time") if gr.has("dt_path") else (base.dt_path,)
    gr.done()

    cs = top.sub("controllers", None)
    if cs is None:
        controllers = ((base.controller.name, base.controller),)
    else:
        controllers = []
        for name in list(cs.data):
            controllers.append((str(name), _controller(cs.sub(name))))
        cs.done()
        controllers = tuple(controllers)

    nz = top.sub("noise", None)
    if nz is not None:
        noise = _build(nz.key, NoiseSpec,
                       nz.qty("omega_jitter_std", "angular_rate", 0.0),
                       nz.qty("pivot_slip_std", "length", 0.0))
        nz.done()
        base = base.with_(noise=noise)
    reps = top.integer("repetitions", 1)
    seed = top.integer("seed", 0)
    workers = top.integer("workers", 1)
    if workers < 1:
        raise ConfigError("workers", "must be >= 1")
    top.done()
    spec = _build("grid", SweepSpec, base, tuple(sweep_angles), tuple(dts), tuple(tilts), controllers, reps, seed)
    # every cell must be a valid run
    for dt in dts:
        _build("grid.dt_path", base.with_, dt_path=dt)
    return SweepFile(spec, workers, p)
