"""World files: arena geometry, light sources, and the robot's start pose.

A world is JSON: ``{"walls": [[x1,y1,x2,y2],...], "circles": [[cx,cy,r],...],
"lights": [[x,y,intensity],...], "robot_start": [x,y,theta]}``. Lengths are
meters, angles radians. A light row may omit the intensity to use the
robot's default. Two fixtures ship with the package: ``empty`` and
``corridor``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .params import RobotParams
from ._geom import normalize_angle, point_clearance


class SchemaError(ValueError):
    """The world file is readable JSON but the wrong shape; names the field."""


class StartInsideObstacle(ValueError):
    """The start pose would overlap an obstacle."""


@dataclass(frozen=True, slots=True)
class Pose:
    x: float
    y: float
    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", normalize_angle(self.theta))


@dataclass(frozen=True, slots=True)
class WorldModel:
    walls: tuple[tuple[float, float, float, float], ...] = ()
    circles: tuple[tuple[float, float, float], ...] = ()
    lights: tuple[tuple[float, float, float | None], ...] = ()
    robot_start: Pose = Pose(0.0, 0.0, 0.0)

    def arrays(self, default_intensity: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Pack geometry into the float64 arrays the kernels consume."""
        walls = np.array(self.walls, dtype=np.float64).reshape(-1, 4)
        circles = np.array(self.circles, dtype=np.float64).reshape(-1, 3)
        lights = np.array(
            [
                (x, y, default_intensity if intensity is None else intensity)
                for x, y, intensity in self.lights
            ],
            dtype=np.float64,
        ).reshape(-1, 3)
        return walls, circles, lights

    def to_json_dict(self) -> dict:
        """The wire shape sent to UIs; omitted intensities are resolved later."""
        return {
            "walls": [list(w) for w in self.walls],
            "circles": [list(c) for c in self.circles],
            "lights": [[x, y] if i is None else [x, y, i] for x, y, i in self.lights],
            "robot_start": [self.robot_start.x, self.robot_start.y, self.robot_start.theta],
        }


EMPTY_WORLD = WorldModel(walls=(), circles=(), lights=(), robot_start=Pose(0.0, 0.0, 0.0))


def _numbers(value, count, where) -> tuple[float, ...]:
    if not isinstance(value, (list, tuple)) or len(value) != count:
        raise SchemaError(f"{where} must be a list of {count} numbers")
    out = []
    for item in value:
        if isinstance(item, bool) or not isinstance(item, (int, float)):
            raise SchemaError(f"{where} must contain only numbers")
        if not math.isfinite(item):
            raise SchemaError(f"{where} must contain only finite numbers")
        out.append(float(item))
    return tuple(out)


def parse_world(data, body_radius: float = RobotParams().body_radius) -> WorldModel:
    """Validate a decoded JSON object into a WorldModel."""
    if not isinstance(data, dict):
        raise SchemaError("world must be a JSON object")
    unknown = set(data) - {"walls", "circles", "lights", "robot_start"}
    if unknown:
        raise SchemaError(f"unknown world key {sorted(unknown)[0]!r}")

    walls = []
    for index, row in enumerate(data.get("walls", [])):
        walls.append(_numbers(row, 4, f"walls[{index}]"))
    circles = []
    for index, row in enumerate(data.get("circles", [])):
        cx, cy, r = _numbers(row, 3, f"circles[{index}]")
        if r <= 0:
            raise SchemaError(f"circles[{index}] radius must be positive")
        circles.append((cx, cy, r))
    lights = []
    for index, row in enumerate(data.get("lights", [])):
        if isinstance(row, (list, tuple)) and len(row) == 2:
            x, y = _numbers(row, 2, f"lights[{index}]")
            lights.append((x, y, None))
        else:
            x, y, intensity = _numbers(row, 3, f"lights[{index}]")
            if intensity < 0:
                raise SchemaError(f"lights[{index}] intensity must be non-negative")
            lights.append((x, y, intensity))
    if "robot_start" in data:
        sx, sy, stheta = _numbers(data["robot_start"], 3, "robot_start")
        start = Pose(sx, sy, stheta)
    else:
        start = Pose(0.0, 0.0, 0.0)

    world = WorldModel(tuple(walls), tuple(circles), tuple(lights), start)
    wall_arr = np.array(world.walls, dtype=np.float64).reshape(-1, 4)
    circle_arr = np.array(world.circles, dtype=np.float64).reshape(-1, 3)
    clearance = point_clearance(start.x, start.y, wall_arr, circle_arr)
    if clearance < body_radius:
        raise StartInsideObstacle(
            f"robot_start clears the nearest obstacle by {clearance:.4f} m, "
            f"needs {body_radius:.4f} m"
        )
    return world


def load_world(path: str | Path, body_radius: float = RobotParams().body_radius) -> WorldModel:
    """Read and validate a world file."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise SchemaError(f"invalid JSON at line {err.lineno}: {err.msg}") from err
    return parse_world(data, body_radius)


def bundled_world_names() -> list[str]:
    names = []
    for entry in resources.files("tiniscript.worlds").iterdir():
        if entry.name.endswith(".world.json"):
            names.append(entry.name[: -len(".world.json")])
    return sorted(names)


def resolve_world(spec: str | None, body_radius: float = RobotParams().body_radius) -> WorldModel:
    """Accept a bundled world name or a file path; None means empty."""
    if spec is None:
        return EMPTY_WORLD
    if "/" not in spec and "\\" not in spec and not spec.endswith(".json"):
        bundle = resources.files("tiniscript.worlds").joinpath(f"{spec}.world.json")
        if not bundle.is_file():
            known = ", ".join(bundled_world_names())
            raise FileNotFoundError(f"no bundled world {spec!r} (have: {known})")
        try:
            data = json.loads(bundle.read_text(encoding="utf-8"))
        except json.JSONDecodeError as err:
            raise SchemaError(f"invalid JSON at line {err.lineno}: {err.msg}") from err
        return parse_world(data, body_radius)
    return load_world(spec, body_radius)
