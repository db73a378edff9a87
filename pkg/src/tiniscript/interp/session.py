"""The tick-stepped virtual machine that runs one frame against a robot.

A session owns a virtual clock that only moves inside :meth:`Session.step`.
Each step first executes every statement due at the current clock value,
then advances the clock by ``dt``. Timed statements (Move, Wait) park the
session until ``busy_until``; zero-duration statements chain within a
single step under a budget so a pathological program cannot hang a step.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Protocol

from ..lang import (
    Frame,
    If,
    Loop,
    Move,
    MoveDir,
    SensorName,
    SensorRead,
    SetupMode,
    StartMarker,
    Statement,
    Stop,
    Wait,
)
from . import events
from .evaluator import Value, eval_expr
from .events import TraceEvent
from .faults import RejectPing, RuntimeFault

# A Move or Wait whose end time is within EPS of the clock counts as
# finished; this absorbs float error in busy_until sums so completion lands
# on the step whose ideal time matches the statement duration.
EPS = 1e-9

# Max statement entries per step; trips StatementBudgetExceeded.
STATEMENT_BUDGET = 10_000

_MOTOR_SIGNS = {
    MoveDir.FORWARD: (1.0, 1.0),
    MoveDir.BACKWARD: (-1.0, -1.0),
    MoveDir.LEFT: (-1.0, 1.0),
    MoveDir.RIGHT: (1.0, -1.0),
}


class RobotInterface(Protocol):
    """What the VM needs from a robot: motors, sensors, and a buzzer."""

    def set_motors(self, left_power: float, right_power: float) -> None: ...

    def read_sensor(self, sensor: SensorName) -> float: ...

    def beep(self) -> None: ...


class Phase(enum.Enum):
    AWAIT_BUTTON = "await_button"
    RUNNING = "running"
    DONE = "done"
    FAULTED = "faulted"
    PREEMPTED = "preempted"


@dataclass
class _BlockFrame:
    """One level of the execution cursor: a statement list and a position.

    Loop bodies also carry the iteration bookkeeping; ``remaining`` is None
    for FOREVER.
    """

    body: tuple[Statement, ...]
    index: int = 0
    is_loop: bool = False
    remaining: int | None = None
    iteration: int = 0


class Session:
    """One frame's execution state. Create via :func:`new_session`."""

    def __init__(self, frame: Frame, robot: RobotInterface):
        if frame.setup is SetupMode.PING:
            raise RejectPing("PING frames carry no program; answer them at the transport")
        self.frame = frame
        self.robot = robot
        self.phase = (
            Phase.AWAIT_BUTTON if frame.setup is SetupMode.BUTTON_START else Phase.RUNNING
        )
        self.clock = 0.0
        self.busy_until = 0.0
        self.env: dict[SensorName, float] = {}
        self.trace: list[TraceEvent] = []
        self._stack: list[_BlockFrame] = [_BlockFrame(frame.program.statements)]
        self._base_clock = 0.0
        self._ticks = 0
        self._tick_dt: float | None = None
        self.trace.append(events.ack(self.clock, frame.setup.value))

    # -- public controls ----------------------------------------------------

    def press_button(self) -> None:
        """Start a ButtonStart session; no effect in any other phase."""
        if self.phase is Phase.AWAIT_BUTTON:
            self.phase = Phase.RUNNING

    def step(self, dt: float) -> list[TraceEvent]:
        """Run statements due now, then advance the clock by dt.

        Returns the events this call appended to the trace.
        """
        if dt <= 0:
            raise ValueError("dt must be positive")
        first_new = len(self.trace)
        if self.phase is Phase.RUNNING and self.clock + EPS >= self.busy_until:
            self._run_due_statements()
        self._advance_clock(dt)
        return self.trace[first_new:]

    # -- stepping internals ---------------------------------------------------

    def _advance_clock(self, dt: float) -> None:
        # Count ticks and multiply rather than accumulate, so 200 steps of
        # 0.01 land on exactly 2.0. Rebase if the caller changes dt.
        if self._tick_dt != dt:
            self._base_clock = self.clock
            self._tick_dt = dt
            self._ticks = 0
        self._ticks += 1
        self.clock = self._base_clock + self._ticks * dt
        if self.busy_until < self.clock:
            self.busy_until = self.clock

    def _run_due_statements(self) -> None:
        budget = STATEMENT_BUDGET
        try:
            while True:
                budget -= 1
                if budget < 0:
                    raise RuntimeFault(
                        "StatementBudgetExceeded",
                        f"more than {STATEMENT_BUDGET} statements in one step",
                    )
                stmt = self._next_statement()
                if stmt is None:
                    self._complete()
                    return
                self._enter(stmt)
                if self.busy_until > self.clock + EPS:
                    return
        except RuntimeFault as fault:
            self._fail(fault)

    def _next_statement(self) -> Statement | None:
        """Pop finished blocks, handle loop iterations, yield the next statement.

        Advances the cursor past the returned statement; block statements
        push their own frame in _enter.
        """
        while self._stack:
            top = self._stack[-1]
            if top.index < len(top.body):
                stmt = top.body[top.index]
                top.index += 1
                return stmt
            if top.is_loop:
                if top.remaining is None:
                    top.index = 0
                    top.iteration += 1
                    self.trace.append(events.loop_iter(self.clock, top.iteration))
                    continue
                top.remaining -= 1
                if top.remaining > 0:
                    top.index = 0
                    top.iteration += 1
                    self.trace.append(events.loop_iter(self.clock, top.iteration))
                    continue
            self._stack.pop()
        return None

    def _enter(self, stmt: Statement) -> None:
        if isinstance(stmt, Move):
            time = self._eval_number(stmt.time, "move time")
            power = self._eval_number(stmt.power, "move power")
            power = self._clamp_power(power)
            signs = _MOTOR_SIGNS[stmt.direction]
            left, right = signs[0] * power, signs[1] * power
            self.robot.set_motors(left, right)
            self.trace.append(events.motor_set(self.clock, left, right))
            self.busy_until = self.clock + max(time, 0.0)
        elif isinstance(stmt, Stop):
            self.robot.set_motors(0.0, 0.0)
            self.trace.append(events.motor_set(self.clock, 0.0, 0.0))
        elif isinstance(stmt, Wait):
            seconds = self._eval_number(stmt.seconds, "wait time")
            self.busy_until = self.clock + max(seconds, 0.0)
        elif isinstance(stmt, SensorRead):
            value = float(self.robot.read_sensor(stmt.sensor))
            self.env[stmt.sensor] = value
            self.trace.append(events.sensor_sample(self.clock, stmt.sensor.value, value))
        elif isinstance(stmt, If):
            condition = self._eval(stmt.condition)
            if not isinstance(condition, bool):
                raise RuntimeFault("TypeMismatch", "IF needs a boolean condition")
            if condition:
                self._stack.append(_BlockFrame(stmt.body))
        elif isinstance(stmt, Loop):
            self._enter_loop(stmt)
        elif isinstance(stmt, StartMarker):
            pass
        else:
            raise TypeError(f"unknown statement {type(stmt).__name__}")

    def _enter_loop(self, stmt: Loop) -> None:
        if stmt.count is None:
            frame = _BlockFrame(stmt.body, is_loop=True, remaining=None, iteration=1)
            self._stack.append(frame)
            self.trace.append(events.loop_iter(self.clock, 1))
            return
        count = self._eval_number(stmt.count, "loop count")
        if count < 0:
            raise RuntimeFault("NegativeLoopCount", f"loop count {count} is negative")
        times = int(count)
        if count != times:
            self.trace.append(
                events.warning(
                    self.clock,
                    "FractionalLoopCount",
                    f"loop count {count} truncated to {times}",
                )
            )
        if times == 0:
            return
        frame = _BlockFrame(stmt.body, is_loop=True, remaining=times, iteration=1)
        self._stack.append(frame)
        self.trace.append(events.loop_iter(self.clock, 1))

    def _complete(self) -> None:
        self.robot.set_motors(0.0, 0.0)
        self.robot.beep()
        self.trace.append(events.beep(self.clock))
        self.trace.append(events.done(self.clock))
        self.phase = Phase.DONE

    def _fail(self, fault: RuntimeFault) -> None:
        self.robot.set_motors(0.0, 0.0)
        self.trace.append(events.error(self.clock, fault.code, fault.message))
        self.phase = Phase.FAULTED

    # -- evaluation helpers ---------------------------------------------------

    def _eval(self, expr) -> Value:
        return eval_expr(expr, self._fresh_read)

    def _eval_number(self, expr, what: str) -> float:
        value = self._eval(expr)
        if isinstance(value, bool):
            raise RuntimeFault("TypeMismatch", f"{what} must be a number, got a boolean")
        if not math.isfinite(value):
            raise RuntimeFault("TypeMismatch", f"{what} must be finite, got {value}")
        return value

    def _fresh_read(self, sensor: SensorName) -> float:
        value = float(self.robot.read_sensor(sensor))
        self.env[sensor] = value
        return value

    def _clamp_power(self, power: float) -> float:
        if power < 0.0:
            self.trace.append(
                events.warning(self.clock, "ClampedPower", f"power {power} clamped to 0")
            )
            return 0.0
        if power > 100.0:
            self.trace.append(
                events.warning(self.clock, "ClampedPower", f"power {power} clamped to 100")
            )
            return 100.0
        return power


def new_session(frame: Frame, robot: RobotInterface) -> Session:
    """Start a session: SI runs at once, SB parks until press_button."""
    return Session(frame, robot)


def preempt(session: Session, frame: Frame, robot: RobotInterface) -> Session:
    """Latest command wins: halt the old session, start the new frame.

    A running session gets motors zeroed and a Preempted event (no beep).
    An AwaitButton session is discarded silently. A finished session is
    left alone; this is then a plain new_session.
    """
    if session.phase is Phase.RUNNING:
        robot.set_motors(0.0, 0.0)
        session.trace.append(events.preempted(session.clock))
        session.phase = Phase.PREEMPTED
    elif session.phase is Phase.AWAIT_BUTTON:
        session.phase = Phase.PREEMPTED
    return new_session(frame, robot)
