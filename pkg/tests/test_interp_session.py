"""Tick VM behavior: stepping, timing, phases, faults, preemption, traces."""

import json
import random

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from tiniscript.interp import (
    Phase,
    RejectPing,
    Session,
    new_session,
    preempt,
    to_jsonl,
)
from tiniscript.lang import SensorName, parse_frame

DT = 0.01


class FakeRobot:
    """Records motor commands and beeps; sensors come from a dict or callable."""

    def __init__(self, sensors=None):
        self.motors = (0.0, 0.0)
        self.motor_log = []
        self.beeps = 0
        self.sensors = sensors or {}

    def set_motors(self, left_power, right_power):
        self.motors = (left_power, right_power)
        self.motor_log.append((left_power, right_power))

    def read_sensor(self, sensor):
        value = self.sensors.get(sensor, 0.0)
        return value() if callable(value) else value

    def beep(self):
        self.beeps += 1


def run_session(source, robot=None, max_steps=100_000, dt=DT):
    robot = robot or FakeRobot()
    session = new_session(parse_frame(source), robot)
    for _ in range(max_steps):
        if session.phase not in (Phase.RUNNING, Phase.AWAIT_BUTTON):
            break
        session.step(dt)
    return session, robot


def kinds(session):
    return [event.kind for event in session.trace]


def by_kind(session, kind):
    return [event for event in session.trace if event.kind == kind]


# -- session creation ----------------------------------------------------------


def test_immediate_frame_starts_running():
    session = new_session(parse_frame("SI|F(5, 80)"), FakeRobot())
    assert session.phase is Phase.RUNNING
    assert kinds(session) == ["ack"]
    assert session.trace[0].payload == {"setup": "SI"}


def test_button_frame_awaits():
    session = new_session(parse_frame("SB|R(3, 60)"), FakeRobot())
    assert session.phase is Phase.AWAIT_BUTTON


def test_ping_frame_rejected():
    with pytest.raises(RejectPing):
        new_session(parse_frame("PING|check_connection"), FakeRobot())


def test_empty_program_completes_on_first_step():
    session, robot = run_session("SI|")
    assert session.phase is Phase.DONE
    assert kinds(session) == ["ack", "beep", "done"]
    assert robot.beeps == 1
    assert robot.motors == (0.0, 0.0)


# -- move timing ----------------------------------------------------------------


def test_forward_move_timing():
    robot = FakeRobot()
    session = new_session(parse_frame("SI|F(2, 80)"), robot)
    first = session.step(DT)
    assert [e.kind for e in first] == ["motor_set"]
    assert first[0].t == 0.0
    assert robot.motors == (80.0, 80.0)

    busy_steps = 1
    while session.phase is Phase.RUNNING:
        events = session.step(DT)
        busy_steps += 1
        if events:
            break
    assert busy_steps == 201
    assert [e.kind for e in events] == ["beep", "done"]
    assert events[-1].t == 2.0
    assert robot.motors == (0.0, 0.0)


def test_motor_direction_map():
    for source, expected in [
        ("SI|F(1, 60)", (60.0, 60.0)),
        ("SI|B(1, 60)", (-60.0, -60.0)),
        ("SI|L(1, 60)", (-60.0, 60.0)),
        ("SI|R(1, 60)", (60.0, -60.0)),
    ]:
        robot = FakeRobot()
        session = new_session(parse_frame(source), robot)
        session.step(DT)
        assert robot.motors == expected, source


def test_motors_not_zeroed_between_statements():
    session, robot = run_session("SI|F(1, 50);W(1)")
    assert session.phase is Phase.DONE
    # the wait holds the last motor command; only completion zeroes them
    assert robot.motor_log == [(50.0, 50.0), (0.0, 0.0)]


def test_zero_wait_completes_immediately_without_motor_set():
    session, robot = run_session("SI|W(0)")
    assert session.phase is Phase.DONE
    assert kinds(session) == ["ack", "beep", "done"]
    assert session.trace[-1].t == 0.0


def test_stop_emits_motor_set():
    session, _ = run_session("SI|S")
    motor_events = by_kind(session, "motor_set")
    assert len(motor_events) == 1
    assert motor_events[0].payload == {"left": 0.0, "right": 0.0}


def test_sequence_duration_is_sum_of_parts():
    session, _ = run_session("SI|L(1,50); B(1,80); W(1); S;")
    assert session.phase is Phase.DONE
    assert abs(session.trace[-1].t - 3.0) <= DT + 1e-9


def test_power_clamp_warns_at_runtime():
    session, robot = run_session("SI|F(1, 150)")
    warnings = by_kind(session, "warning")
    assert len(warnings) == 1
    assert warnings[0].payload["code"] == "ClampedPower"
    assert by_kind(session, "motor_set")[0].payload == {"left": 100.0, "right": 100.0}
    assert session.phase is Phase.DONE


def test_negative_time_treated_as_zero():
    session, _ = run_session("SI|F(-5, 50)")
    assert session.phase is Phase.DONE
    assert session.trace[-1].t == 0.0


# -- loops -----------------------------------------------------------------------


def test_counted_loop_iterations_and_motor_sets():
    session, _ = run_session("SI|LOOP(3);F(2, 50);END_LOOP")
    iters = by_kind(session, "loop_iter")
    motors = by_kind(session, "motor_set")
    assert [e.payload["iteration"] for e in iters] == [1, 2, 3]
    assert len(motors) == 3
    assert all(e.payload == {"left": 50.0, "right": 50.0} for e in motors)
    assert session.phase is Phase.DONE
    assert abs(session.trace[-1].t - 6.0) <= 1e-9


def test_loop_zero_runs_nothing():
    session, _ = run_session("SI|LOOP(0);F(1, 50);END_LOOP")
    assert by_kind(session, "loop_iter") == []
    assert by_kind(session, "motor_set") == []
    assert session.phase is Phase.DONE


def test_fractional_loop_count_truncates_with_warning():
    session, _ = run_session("SI|LOOP(2.9);W(0.1);END_LOOP")
    warnings = by_kind(session, "warning")
    assert [w.payload["code"] for w in warnings] == ["FractionalLoopCount"]
    assert len(by_kind(session, "loop_iter")) == 2


def test_negative_loop_count_faults():
    session, robot = run_session("SI|LOOP(-1);S;END_LOOP")
    assert session.phase is Phase.FAULTED
    assert by_kind(session, "error")[0].payload["code"] == "NegativeLoopCount"
    assert robot.motors == (0.0, 0.0)
    assert robot.beeps == 0


def test_forever_loop_never_completes():
    robot = FakeRobot()
    session = new_session(parse_frame("SI|LOOP(FOREVER);F(1, 80);END_LOOP"), robot)
    for _ in range(1000):
        session.step(DT)
    assert session.phase is Phase.RUNNING
    assert robot.beeps == 0
    # roughly one iteration per second of virtual time
    assert len(by_kind(session, "loop_iter")) == 10


def test_zero_duration_forever_body_trips_budget():
    session, _ = run_session("SI|LOOP(FOREVER);START;END_LOOP", max_steps=5)
    assert session.phase is Phase.FAULTED
    assert by_kind(session, "error")[0].payload["code"] == "StatementBudgetExceeded"


# -- conditionals and sensors -----------------------------------------------------


def test_if_true_branch_runs():
    robot = FakeRobot({SensorName.LIGHT_R: 150.0})
    session = new_session(parse_frame("SI|IF(LIGHT_R > 100);F(4, 70);ENDIF"), robot)
    session.step(DT)
    assert robot.motors == (70.0, 70.0)


def test_if_false_branch_skipped():
    session, robot = run_session("SI|IF(LIGHT_R > 100);F(4, 70);ENDIF")
    assert session.phase is Phase.DONE
    assert by_kind(session, "motor_set") == []
    assert robot.motors == (0.0, 0.0)


def test_condition_reads_sensor_fresh_each_evaluation():
    readings = iter([50.0, 50.0, 5.0, 5.0])
    robot = FakeRobot({SensorName.DISTANCE: lambda: next(readings)})
    source = "SI|LOOP(3);W(0.1);IF(DISTANCE < 10);S;ENDIF;END_LOOP"
    session = new_session(parse_frame(source), robot)
    while session.phase is Phase.RUNNING:
        session.step(DT)
    stops = by_kind(session, "motor_set")
    assert len(stops) == 1  # only the third iteration sees a close reading


def test_sensor_statement_emits_sample_and_stores_env():
    robot = FakeRobot({SensorName.DISTANCE: 42.0})
    session = new_session(parse_frame("SI|DISTANCE"), robot)
    session.step(DT)
    samples = by_kind(session, "sensor_sample")
    assert len(samples) == 1
    assert samples[0].payload == {"sensor": "DISTANCE", "value": 42.0}
    assert session.env[SensorName.DISTANCE] == 42.0


def test_condition_type_mismatch_faults():
    session, _ = run_session("SI|IF(1 + 2);S;ENDIF")
    assert session.phase is Phase.FAULTED
    assert by_kind(session, "error")[0].payload["code"] == "TypeMismatch"


def test_division_by_zero_in_condition_faults():
    session, robot = run_session("SI|IF(1/0 > 1);S;ENDIF")
    assert session.phase is Phase.FAULTED
    assert by_kind(session, "error")[0].payload["code"] == "DivisionByZero"
    assert robot.motors == (0.0, 0.0)


def test_faulted_session_emits_nothing_afterwards():
    session, _ = run_session("SI|IF(1/0 > 1);S;ENDIF")
    assert session.step(DT) == []
    assert session.step(DT) == []


# -- button gating ------------------------------------------------------------------


def test_button_gates_motor_sets():
    robot = FakeRobot()
    session = new_session(parse_frame("SB|R(3, 60)"), robot)
    for _ in range(500):
        session.step(DT)
    assert by_kind(session, "motor_set") == []
    assert robot.motor_log == []

    session.press_button()
    assert session.phase is Phase.RUNNING
    press_clock = session.clock
    while session.phase is Phase.RUNNING:
        session.step(DT)
    assert robot.motor_log[0] == (60.0, -60.0)
    assert session.phase is Phase.DONE
    assert abs((session.trace[-1].t - press_clock) - 3.0) <= DT + 1e-9


def test_press_button_outside_await_is_noop():
    session, _ = run_session("SI|W(0)")
    assert session.phase is Phase.DONE
    session.press_button()
    assert session.phase is Phase.DONE


# -- completion and beep -------------------------------------------------------------


def test_beep_exactly_once_only_on_normal_completion():
    session, robot = run_session("SI|F(0.5, 40)")
    assert robot.beeps == 1
    assert len(by_kind(session, "beep")) == 1
    for _ in range(10):
        session.step(DT)
    assert robot.beeps == 1


def test_no_beep_on_fault():
    _, robot = run_session("SI|IF(1/0 > 1);S;ENDIF")
    assert robot.beeps == 0


# -- preemption -----------------------------------------------------------------------


def test_preempt_running_session():
    robot = FakeRobot()
    session = new_session(parse_frame("SI|LOOP(FOREVER);F(1, 80);END_LOOP"), robot)
    for _ in range(50):
        session.step(DT)
    assert robot.motors == (80.0, 80.0)

    replacement = preempt(session, parse_frame("SI|S"), robot)
    assert session.phase is Phase.PREEMPTED
    assert kinds(session)[-1] == "preempted"
    assert robot.motors == (0.0, 0.0)
    assert robot.beeps == 0

    while replacement.phase is Phase.RUNNING:
        replacement.step(DT)
    assert replacement.phase is Phase.DONE
    assert [e.kind for e in replacement.trace] == ["ack", "motor_set", "beep", "done"]
    assert robot.beeps == 1


def test_preempt_awaiting_session_is_silent():
    robot = FakeRobot()
    session = new_session(parse_frame("SB|R(3, 60)"), robot)
    replacement = preempt(session, parse_frame("SI|W(0)"), robot)
    assert session.phase is Phase.PREEMPTED
    assert kinds(session) == ["ack"]
    assert replacement.phase is Phase.RUNNING


def test_preempt_done_session_leaves_it_alone():
    session, robot = run_session("SI|W(0)")
    trace_before = list(session.trace)
    replacement = preempt(session, parse_frame("SI|S"), robot)
    assert session.phase is Phase.DONE
    assert session.trace == trace_before
    assert replacement.phase is Phase.RUNNING


# -- trace serialization ----------------------------------------------------------------


def test_jsonl_key_order_and_format():
    session, _ = run_session("SI|F(1, 80)")
    lines = to_jsonl(session.trace).splitlines()
    assert lines[0] == '{"t": 0.0, "kind": "ack", "setup": "SI"}'
    assert lines[1] == '{"t": 0.0, "kind": "motor_set", "left": 80.0, "right": 80.0}'
    assert lines[-1].startswith('{"t": 1.0, "kind": "done"')
    for line in lines:
        json.loads(line)


def test_trace_times_non_decreasing():
    session, _ = run_session("SI|LOOP(5);F(0.3, 20);S;END_LOOP")
    times = [event.t for event in session.trace]
    assert times == sorted(times)


def test_determinism_byte_identical_traces():
    def trace_bytes():
        session, _ = run_session("SI|LOOP(3);F(0.7, 35);DISTANCE;W(0.2);END_LOOP")
        return to_jsonl(session.trace)

    assert trace_bytes() == trace_bytes() == trace_bytes()


# -- duration additivity property ------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.tuples(
            st.sampled_from(["F", "B", "L", "R", "W"]),
            st.integers(min_value=0, max_value=40).map(lambda n: n / 10),
        ),
        min_size=0,
        max_size=6,
    )
)
def test_duration_additivity(parts):
    statements = [
        f"W({duration})" if word == "W" else f"{word}({duration}, 50)"
        for word, duration in parts
    ]
    source = "SI|" + ";".join(statements)
    session, _ = run_session(source)
    assert session.phase is Phase.DONE
    expected = sum(duration for _, duration in parts)
    tolerance = DT * (len(parts) + 1) + 1e-9
    assert abs(session.trace[-1].t - expected) <= tolerance


def test_random_loop_free_programs_complete():
    rng = random.Random(4251)
    for _ in range(40):
        durations = [rng.randint(0, 20) / 10 for _ in range(rng.randint(0, 5))]
        source = "SI|" + ";".join(f"W({d})" for d in durations)
        session, _ = run_session(source)
        assert session.phase is Phase.DONE
        expected = sum(durations)
        assert abs(session.trace[-1].t - expected) <= DT * (len(durations) + 1) + 1e-9
