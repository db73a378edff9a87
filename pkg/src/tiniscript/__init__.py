"""TiniScript: a beginner robotics language with a simulator and serial service.

The high-traffic entry points are re-exported here; the full surface
lives in the subpackages (lang, interp, sim, service) and in runner.
"""

from .interp import Phase, Session, TraceEvent, new_session, preempt
from .lang import Frame, ParseError, format_frame, parse_frame, validate
from .runner import ExitStatus, RunReport, Stepper, run_frame
from .sim import RobotParams, SimRobot, WorldModel, load_world, resolve_world

__version__ = "0.1.0"

__all__ = [
    "ExitStatus",
    "Frame",
    "ParseError",
    "Phase",
    "RobotParams",
    "RunReport",
    "Session",
    "SimRobot",
    "Stepper",
    "TraceEvent",
    "WorldModel",
    "__version__",
    "format_frame",
    "load_world",
    "new_session",
    "parse_frame",
    "preempt",
    "resolve_world",
    "run_frame",
    "validate",
]
