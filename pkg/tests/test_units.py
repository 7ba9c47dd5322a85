import math

import pytest

from pivotwalk.units import UnitError, format_quantity, parse_quantity


@pytest.mark.parametrize("text", ["10 mm", "1 cm", "0.01 m", "10mm", " 1e1 mm "])
def test_equivalent_lengths(text):
    assert parse_quantity(text, "length") == parse_quantity("0.01 m", "length")


def test_angles():
    assert parse_quantity("90 deg", "angle") == math.pi / 2
    assert parse_quantity(90, "angle") == math.pi / 2
    assert parse_quantity("1.5 rad", "angle") == 1.5
    assert parse_quantity("pi rad", "angle") == math.pi


def test_pi_multiplier():
    assert parse_quantity("40*pi s", "time") == 40 * math.pi
    assert parse_quantity("2 pi s", "time") == 2 * math.pi


def test_rates_and_speeds():
    assert parse_quantity("1 rad/s", "angular_rate") == 1.0
    assert parse_quantity("180 deg/s", "angular_rate") == pytest.approx(math.pi)
    assert parse_quantity("1 mm/s", "speed") == 1e-3


@pytest.mark.parametrize(
    "value,kind",
    [(10, "length"), ("10", "time"), ("10 kg", "length"), ("mm", "length"), (True, "angle"), ([1], "length"),
     ("10 deg", "length"), ("1 m", "nope")],
)
def test_rejects(value, kind):
    with pytest.raises(UnitError):
        parse_quantity(value, kind)


def test_format_round_trip():
    for v, unit, kind in [(0.0123, "mm", "length"), (1.2, "deg", "angle"), (0.5, "s", "time")]:
        assert parse_quantity(format_quantity(v, unit), kind) == pytest.approx(v, rel=1e-15)
    with pytest.raises(UnitError):
        format_quantity(1.0, "furlong")
