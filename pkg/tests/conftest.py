import math
import sys

import pytest

from pivotwalk.controllers import GaitParams, GeometricGains, OptimGains
from pivotwalk.kinematics import RobotGeometry, RobotState
from pivotwalk.simengine import GeometricController, OptimController, SimConfig, StraightLineGait
from pivotwalk.trajectories import EightShape

L = 0.01
EIGHT = EightShape(0.04, 0.04, 0.1, 0.05)
START = RobotState(0.0, -0.042, 0.5 * math.pi)

# tuned gains shipped in the bundled configs
GB = GeometricController(GeometricGains(195.0))
OB = OptimController(OptimGains(eta=251188.6431509582, omega_max=1.29, sigma0_mode="zero"))


def eight_config(controller, sweep_deg=10.0, **kw):
    base = dict(
        geometry=RobotGeometry(L),
        initial_state=START,
        controller=controller,
        gait=GaitParams(math.radians(sweep_deg), math.radians(20.0)),
        t_f=40.0 * math.pi,
        path=EIGHT,
        dt_path=0.1,
    )
    base.update(kw)
    return SimConfig(**base)


def gait_config(sweep_deg=90.0, length=L, goal=0.06, **kw):
    a = math.radians(sweep_deg)
    base = dict(
        geometry=RobotGeometry(length),
        initial_state=RobotState(0.0, 0.0, 0.5 * math.pi),
        controller=StraightLineGait(goal, 1.0),
        gait=GaitParams(a, desired_sweep=a),
        t_f=None,
        dt_integration=0.01,
    )
    base.update(kw)
    return SimConfig(**base)


@pytest.fixture
def geom():
    return RobotGeometry(L)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for i in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.format_line(i))
