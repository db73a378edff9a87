"""Physical constants of the simulated robot."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class RobotParams:
    """Drive and sensor constants; all strictly positive.

    v_max is the wheel speed at 100% power. distance_max is the distance
    sensor's no-hit reading in centimeters. light_scale is the intensity
    assumed for world lights that don't specify one (raw units at 1 m).
    """

    v_max: float = 0.5
    wheelbase: float = 0.12
    body_radius: float = 0.08
    distance_max: float = 400.0
    light_scale: float = 100.0

    def __post_init__(self):
        for name in ("v_max", "wheelbase", "body_radius", "distance_max", "light_scale"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")
