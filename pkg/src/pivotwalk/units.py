"""Parsing of unit-suffixed quantities such as ``"10 mm"`` or ``"40*pi s"``.

Everything is converted to SI (m, rad, s) at the boundary. Angles given as a
bare number are read as degrees; every other dimensioned kind requires a
suffix.
"""

from __future__ import annotations

import math
import re

LENGTH = {"m": 1.0, "cm": 1e-2, "mm": 1e-3}
ANGLE = {"rad": 1.0, "deg": math.pi / 180.0}
TIME = {"s": 1.0}

KINDS = ("length", "angle", "time", "angular_rate", "speed")

_NUMBER = re.compile(
    r"^\s*(?P<num>[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)?\s*"
    r"(?P<pi>\*?\s*pi)?\s*(?P<unit>[A-Za-z/]*)\s*$"
)


class UnitError(ValueError):
    pass


def _table(kind: str) -> dict[str, float]:
    if kind == "length":
        return dict(LENGTH)
    if kind == "angle":
        return dict(ANGLE)
    if kind == "time":
        return dict(TIME)
    if kind == "angular_rate":
        return {f"{a}/{t}": va / vt for a, va in ANGLE.items() for t, vt in TIME.items()}
    if kind == "speed":
        return {f"{a}/{t}": va / vt for a, va in LENGTH.items() for t, vt in TIME.items()}
    raise UnitError(f"unknown quantity kind {kind!r}")


def parse_quantity(value: object, kind: str) -> float:
    """Return ``value`` in SI units for the given kind.

    >>> parse_quantity("10 mm", "length")
    0.01
    >>> parse_quantity(90, "angle") == math.pi / 2
    True
    """
    if isinstance(value, bool):
        raise UnitError(f"expected a {kind}, got a boolean")
    if isinstance(value, (int, float)):
        if kind == "angle":
            return float(value) * ANGLE["deg"]
        raise UnitError(f"{kind} {value!r} needs a unit suffix ({', '.join(_table(kind))})")
    if not isinstance(value, str):
        raise UnitError(f"expected a {kind} string, got {type(value).__name__}")
    m = _NUMBER.match(value)
    if m is None or (m.group("num") is None and m.group("pi") is None):
        raise UnitError(f"cannot parse {kind} {value!r}")
    num = float(m.group("num")) if m.group("num") is not None else 1.0
    if m.group("pi"):
        num *= math.pi
    unit = m.group("unit")
    table = _table(kind)
    if not unit:
        if kind == "angle":
            return num * ANGLE["deg"]
        raise UnitError(f"{kind} {value!r} needs a unit suffix ({', '.join(table)})")
    if unit not in table:
        raise UnitError(f"unit {unit!r} is not a {kind} unit ({', '.join(table)})")
    return num * table[unit]


def format_quantity(value: float, unit: str) -> str:
    for kind in KINDS:
        table = _table(kind)
        if unit in table:
            return f"{value / table[unit]!r} {unit}"
    raise UnitError(f"unknown unit {unit!r}")
