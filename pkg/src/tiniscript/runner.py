"""Synchronous driver coupling an interpreter session to a simulated robot.

One Stepper owns one Session and one SimRobot and advances both on a
shared tick: statements due at the current clock execute first, then the
world integrates the resulting motor state over dt. Collision events are
synthesized here, on the rising edge of the robot's collided flag, since
the interpreter never sees world geometry.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

from .interp import EPS, Phase, Session, TraceEvent, new_session, preempt
from .interp.events import collision
from .lang import Frame
from .sim import Pose, RobotParams, SimRobot, WorldModel

DEFAULT_DT = 0.01
DEFAULT_MAX_TIME = 60.0


class ExitStatus(IntEnum):
    """Process exit codes: a total function of the outcome class."""

    DONE = 0
    STATIC_ERROR = 1
    ENVIRONMENT = 2
    FAULTED = 3
    CUTOFF = 4


class Stepper:
    """Advance a program and its simulated world in lockstep."""

    def __init__(
        self,
        frame: Frame,
        *,
        world: WorldModel | None = None,
        params: RobotParams | None = None,
        dt: float = DEFAULT_DT,
        robot: SimRobot | None = None,
    ):
        if not 0 < dt <= 0.1:
            raise ValueError("dt must be in (0, 0.1]")
        self.dt = dt
        # A caller-supplied robot keeps its pose and world; a long-lived
        # driver (REPL, service) passes one in so state survives frames.
        self.robot = robot if robot is not None else SimRobot(
            world=world if world is not None else WorldModel(),
            params=params if params is not None else RobotParams(),
        )
        self._collided = self.robot.state().collided
        self.session: Session = new_session(frame, self.robot)
        self.trace: list[TraceEvent] = list(self.session.trace)

    @property
    def phase(self) -> Phase:
        return self.session.phase

    @property
    def clock(self) -> float:
        return self.session.clock

    def press_button(self) -> None:
        self.session.press_button()

    def replace(self, frame: Frame) -> list[TraceEvent]:
        """Preempt the current program with a new frame (same robot).

        Returns the events appended to the old session's trace by the
        preemption itself; the new session's ack starts the fresh trace.
        """
        old = self.session
        before = len(old.trace)
        self.session = preempt(old, frame, self.robot)
        tail = list(old.trace[before:])
        self.trace.extend(tail)
        self.trace.extend(self.session.trace)
        return tail

    def tick(self) -> list[TraceEvent]:
        """One dt of virtual time across session and world."""
        events = self.session.step(self.dt)
        state = self.robot.tick(self.dt)
        if state.collided and not self._collided:
            events.append(collision(state.t, state.pose.x, state.pose.y))
        self._collided = state.collided
        self.trace.extend(events)
        return events

    def run(
        self,
        *,
        max_time: float = DEFAULT_MAX_TIME,
        button_at: float | None = None,
    ) -> None:
        """Tick until the session reaches a terminal phase or max_time."""
        while self.phase in (Phase.RUNNING, Phase.AWAIT_BUTTON):
            if self.clock + EPS >= max_time:
                break
            if (
                button_at is not None
                and self.phase is Phase.AWAIT_BUTTON
                and self.clock + EPS >= button_at
            ):
                self.press_button()
            self.tick()


@dataclass(frozen=True, slots=True)
class RunReport:
    """Outcome summary for one full program run."""

    exit_status: ExitStatus
    phase: Phase
    duration: float
    event_counts: dict[str, int]
    final_pose: Pose
    trace: tuple[TraceEvent, ...]


_TERMINAL_KINDS = frozenset({"done", "error", "preempted"})


def run_frame(
    frame: Frame,
    *,
    world: WorldModel | None = None,
    params: RobotParams | None = None,
    dt: float = DEFAULT_DT,
    max_time: float = DEFAULT_MAX_TIME,
    button_at: float | None = None,
) -> RunReport:
    """Run one frame to completion, fault, or the virtual-time cutoff."""
    stepper = Stepper(frame, world=world, params=params, dt=dt)
    stepper.run(max_time=max_time, button_at=button_at)

    phase = stepper.phase
    if phase is Phase.DONE:
        status = ExitStatus.DONE
    elif phase is Phase.FAULTED:
        status = ExitStatus.FAULTED
    else:
        status = ExitStatus.CUTOFF

    duration = stepper.clock
    for event in reversed(stepper.trace):
        if event.kind in _TERMINAL_KINDS:
            duration = event.t
            break

    counts: dict[str, int] = {}
    for event in stepper.trace:
        counts[event.kind] = counts.get(event.kind, 0) + 1

    return RunReport(
        exit_status=status,
        phase=phase,
        duration=duration,
        event_counts=counts,
        final_pose=stepper.robot.state().pose,
        trace=tuple(stepper.trace),
    )
