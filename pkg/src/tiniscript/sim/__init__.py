"""2D differential-drive robot simulation: kinematics, sensors, worlds."""

from .kernels import BACKEND
from .params import RobotParams
from .robot import SimRobot, SimState
from .world import (
    EMPTY_WORLD,
    Pose,
    SchemaError,
    StartInsideObstacle,
    WorldModel,
    bundled_world_names,
    load_world,
    parse_world,
    resolve_world,
)

__all__ = [
    "BACKEND",
    "EMPTY_WORLD",
    "Pose",
    "RobotParams",
    "SchemaError",
    "SimRobot",
    "SimState",
    "StartInsideObstacle",
    "WorldModel",
    "bundled_world_names",
    "load_world",
    "parse_world",
    "resolve_world",
]
