"""The simulated robot: differential drive plus distance and light sensors.

Implements the interpreter's RobotInterface (set_motors, read_sensor, beep)
and adds tick(dt) for time and state() for telemetry snapshots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..lang import SensorName
from . import kernels
from .params import RobotParams
from .world import EMPTY_WORLD, Pose, WorldModel

# 45 degrees: the light sensors sit this far around the body from heading.
_SENSOR_OFFSET = math.pi / 4.0


@dataclass(frozen=True, slots=True)
class SimState:
    """Immutable snapshot for telemetry."""

    t: float
    pose: Pose
    motor_left: float
    motor_right: float
    collided: bool
    beeps: int


class SimRobot:
    """One robot in one world. The owner serializes all calls."""

    def __init__(self, world: WorldModel = EMPTY_WORLD, params: RobotParams = RobotParams()):
        self.params = params
        self.world = world
        self._walls, self._circles, self._lights = world.arrays(params.light_scale)
        self.pose = world.robot_start
        self.motor_left = 0.0
        self.motor_right = 0.0
        self.collided = False
        self.beeps = 0
        self.t = 0.0

    # -- RobotInterface ------------------------------------------------------

    def set_motors(self, left_power: float, right_power: float) -> None:
        self.motor_left = left_power
        self.motor_right = right_power

    def read_sensor(self, sensor: SensorName | str) -> float:
        name = sensor if isinstance(sensor, SensorName) else SensorName(sensor)
        if name is SensorName.DISTANCE:
            return self.read_distance()
        if name is SensorName.LIGHT_L:
            return self.read_light("L")
        return self.read_light("R")

    def beep(self) -> None:
        self.beeps += 1

    # -- time ------------------------------------------------------------------

    def tick(self, dt: float) -> SimState:
        """Advance the world by dt (capped at 0.1 s per call)."""
        if not 0.0 < dt <= 0.1:
            raise ValueError("dt must be in (0, 0.1]")
        vl = (self.motor_left / 100.0) * self.params.v_max
        vr = (self.motor_right / 100.0) * self.params.v_max
        x, y, theta, collided = kernels.resolve_motion(
            self.pose.x,
            self.pose.y,
            self.pose.theta,
            vl,
            vr,
            self.params.wheelbase,
            self.params.body_radius,
            dt,
            self._walls,
            self._circles,
        )
        self.pose = Pose(x, y, theta)
        self.collided = collided
        self.t += dt
        return self.state()

    def state(self) -> SimState:
        return SimState(
            t=self.t,
            pose=self.pose,
            motor_left=self.motor_left,
            motor_right=self.motor_right,
            collided=self.collided,
            beeps=self.beeps,
        )

    # -- sensors ------------------------------------------------------------------

    def read_distance(self) -> float:
        """Centimeters from the body edge to the nearest obstacle ahead."""
        heading_x = math.cos(self.pose.theta)
        heading_y = math.sin(self.pose.theta)
        hit = kernels.raycast(
            self.pose.x, self.pose.y, heading_x, heading_y, self._walls, self._circles
        )
        if math.isinf(hit):
            return self.params.distance_max
        cm = (hit - self.params.body_radius) * 100.0
        if cm < 0.0:
            return 0.0
        if cm > self.params.distance_max:
            return self.params.distance_max
        return cm

    def read_light(self, side: str) -> float:
        """Raw 0..1023 inverse-square reading at the L or R edge sensor."""
        if side == "L":
            angle = self.pose.theta + _SENSOR_OFFSET
        elif side == "R":
            angle = self.pose.theta - _SENSOR_OFFSET
        else:
            raise ValueError("side must be 'L' or 'R'")
        sx = self.pose.x + self.params.body_radius * math.cos(angle)
        sy = self.pose.y + self.params.body_radius * math.sin(angle)
        value = kernels.light_sum(sx, sy, self._lights)
        if value > 1023.0:
            return 1023.0
        if value < 0.0:
            return 0.0
        return value

    def min_clearance(self) -> float:
        """Distance from the body center to the nearest obstacle boundary."""
        return kernels.point_clearance(self.pose.x, self.pose.y, self._walls, self._circles)
