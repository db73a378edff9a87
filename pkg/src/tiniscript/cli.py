"""Command-line front end: check, fmt, run, serve, repl, and bench.

Exit codes are a total function of the outcome class: 0 success/Done,
1 static program error, 2 environment problem (I/O, ports, world files),
3 runtime fault, 4 virtual-time cutoff.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .interp import Phase, TraceEvent, to_jsonl
from .lang import (
    Diagnostic,
    Frame,
    ParseError,
    SetupMode,
    format_frame,
    parse_frame,
    validate,
    wire_position,
)
from .runner import DEFAULT_DT, DEFAULT_MAX_TIME, ExitStatus, RunReport, Stepper, run_frame
from .service.protocol import (
    ACK,
    BTN,
    EVT_BUTTON_WAIT,
    PONG,
    decode_request,
    event_to_wire,
)
from .sim import (
    SchemaError,
    SimRobot,
    StartInsideObstacle,
    WorldModel,
    bundled_world_names,
    resolve_world,
)


class CliEnvironmentError(Exception):
    """I/O or configuration failure: maps to exit 2."""


def read_program(arg: str) -> str:
    """Load program text from a path, or accept a literal frame.

    Any argument containing the frame separator is a literal; everything
    else is treated as a file path (so a missing file is an I/O error,
    not a parse error).
    """
    if "|" in arg:
        return arg
    try:
        return Path(arg).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliEnvironmentError(f"cannot read program: {exc}") from exc


def render_diagnostic(diag: Diagnostic) -> str:
    pos = wire_position(diag.span)
    return f"{diag.severity.value} {pos}: {diag.code}: {diag.message}"


def parse_or_report(text: str) -> Frame | None:
    """Parse, printing diagnostics one per line on failure."""
    try:
        return parse_frame(text)
    except ParseError as exc:
        for diag in exc.diagnostics:
            print(render_diagnostic(diag))
        return None


def load_world_arg(spec: str | None) -> WorldModel:
    try:
        return resolve_world(spec)
    except FileNotFoundError as exc:
        known = ", ".join(bundled_world_names())
        raise CliEnvironmentError(
            f"world not found: {spec} (bundled: {known})"
        ) from exc
    except (SchemaError, StartInsideObstacle) as exc:
        raise CliEnvironmentError(f"bad world file: {exc}") from exc


# -- subcommands -----------------------------------------------------------------


def cmd_check(args: argparse.Namespace) -> int:
    frame = parse_or_report(read_program(args.program))
    if frame is None:
        return ExitStatus.STATIC_ERROR
    if frame.setup is SetupMode.PING:
        return ExitStatus.DONE
    diagnostics = validate(frame)
    for diag in diagnostics:
        print(render_diagnostic(diag))
    if any(d.is_error for d in diagnostics):
        return ExitStatus.STATIC_ERROR
    return ExitStatus.DONE


def cmd_fmt(args: argparse.Namespace) -> int:
    text = read_program(args.program)
    frame = parse_or_report(text)
    if frame is None:
        return ExitStatus.STATIC_ERROR
    canonical = format_frame(frame)
    print(canonical)
    if args.check and text.strip() != canonical:
        return ExitStatus.STATIC_ERROR
    return ExitStatus.DONE


def summarize(report: RunReport) -> str:
    pose = report.final_pose
    counts = " ".join(f"{k}={v}" for k, v in sorted(report.event_counts.items()))
    return (
        f"{report.phase.name.lower()} t={report.duration:.2f}"
        f" pose=({pose.x:.4f}, {pose.y:.4f}, {pose.theta:.4f})"
        f" events[{counts}]"
    )


def write_trace(path: str, trace: tuple[TraceEvent, ...]) -> None:
    payload = to_jsonl(trace)
    if path == "-":
        sys.stdout.write(payload)
        return
    try:
        Path(path).write_text(payload, encoding="utf-8")
    except OSError as exc:
        raise CliEnvironmentError(f"cannot write trace: {exc}") from exc


def cmd_run(args: argparse.Namespace) -> int:
    frame = parse_or_report(read_program(args.program))
    if frame is None:
        return ExitStatus.STATIC_ERROR
    if frame.setup is SetupMode.PING:
        print(PONG)
        return ExitStatus.DONE

    diagnostics = validate(frame)
    for diag in diagnostics:
        print(render_diagnostic(diag), file=sys.stderr)
    if any(d.is_error for d in diagnostics):
        return ExitStatus.STATIC_ERROR

    world = load_world_arg(args.world)
    if not 0 < args.dt <= 0.1:
        raise CliEnvironmentError(f"dt must be in (0, 0.1], got {args.dt}")
    report = run_frame(
        frame,
        world=world,
        dt=args.dt,
        max_time=args.max_time,
        button_at=args.button_at,
    )
    if args.trace is not None:
        write_trace(args.trace, report.trace)
    print(summarize(report))
    return report.exit_status


def cmd_serve(args: argparse.Namespace) -> int:
    from .service.server import ServiceConfig, serve

    world = load_world_arg(args.world)
    if not 0 < args.dt <= 0.1:
        raise CliEnvironmentError(f"dt must be in (0, 0.1], got {args.dt}")
    if args.serial_port == args.telemetry_port:
        raise CliEnvironmentError("serial and telemetry ports must differ")
    config = ServiceConfig(
        serial_port=args.serial_port,
        telemetry_port=args.telemetry_port,
        world=world,
        time_mode=args.time_mode,
        dt=args.dt,
    )
    try:
        serve(config)
    except OSError as exc:
        raise CliEnvironmentError(f"cannot bind service ports: {exc}") from exc
    return ExitStatus.DONE


def state_line(robot: SimRobot, phase: Phase | None) -> str:
    state = robot.state()
    return (
        f"t={state.t:.2f}"
        f" x={state.pose.x:.3f} y={state.pose.y:.3f} theta={state.pose.theta:.3f}"
        f" dist={robot.read_distance():.1f}"
        f" light_l={robot.read_light('L'):.1f} light_r={robot.read_light('R'):.1f}"
        f" phase={phase.name.lower() if phase else 'idle'}"
    )


def cmd_repl(args: argparse.Namespace) -> int:
    world = load_world_arg(args.world)
    robot = SimRobot(world=world)
    stepper: Stepper | None = None

    def drain(active: Stepper) -> None:
        start = active.clock
        while active.phase is Phase.RUNNING:
            if active.clock - start >= DEFAULT_MAX_TIME:
                print("(paused: 60 s virtual budget; send a new frame)")
                break
            for event in active.tick():
                line = event_to_wire(event)
                if line is not None:
                    print(line)

    print("tini repl; :quit leaves, :btn presses the button, :state shows state")
    while True:
        try:
            raw = input("tini> ")
        except EOFError:
            print()
            return ExitStatus.DONE
        line = raw.strip()
        if not line:
            continue
        if line == ":quit":
            return ExitStatus.DONE
        if line == ":state":
            print(state_line(robot, stepper.phase if stepper else None))
            continue
        if line in (":btn", BTN):
            if stepper is not None and stepper.phase is Phase.AWAIT_BUTTON:
                stepper.press_button()
                drain(stepper)
            print(state_line(robot, stepper.phase if stepper else None))
            continue
        decoded = decode_request(line)
        if isinstance(decoded, str):
            print(decoded)
            continue
        if decoded.setup is SetupMode.PING:
            print(PONG)
            continue
        if stepper is None:
            stepper = Stepper(decoded, robot=robot, dt=args.dt)
        else:
            for event in stepper.replace(decoded):
                wire = event_to_wire(event)
                if wire is not None:
                    print(wire)
        print(ACK)
        if stepper.phase is Phase.AWAIT_BUTTON:
            print(EVT_BUTTON_WAIT)
        else:
            drain(stepper)
        print(state_line(robot, stepper.phase))


def cmd_bench(args: argparse.Namespace) -> int:
    from .bench import run_bench

    run_bench(ticks=args.ticks)
    return ExitStatus.DONE


# -- argument wiring ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tini",
        description="TiniScript toolkit: check, format, run, serve, and benchmark.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="parse and validate a program")
    check.add_argument("program", help="path to a program file, or a literal frame")
    check.set_defaults(func=cmd_check)

    fmt = sub.add_parser("fmt", help="print the canonical single-line form")
    fmt.add_argument("program", help="path to a program file, or a literal frame")
    fmt.add_argument("--check", action="store_true",
                     help="exit 1 if the input is not already canonical")
    fmt.set_defaults(func=cmd_fmt)

    run = sub.add_parser("run", help="run a program against the simulator")
    run.add_argument("program", help="path to a program file, or a literal frame")
    run.add_argument("--world", default=None,
                     help="bundled world name or path to a .world.json file")
    run.add_argument("--dt", type=float, default=DEFAULT_DT,
                     help="tick length in virtual seconds (default 0.01)")
    run.add_argument("--max-time", type=float, default=DEFAULT_MAX_TIME,
                     help="virtual-time cutoff in seconds (default 60)")
    run.add_argument("--trace", default=None, metavar="PATH",
                     help="write the JSONL event trace here ('-' for stdout)")
    run.add_argument("--button-at", type=float, default=None, metavar="T",
                     help="press the start button at virtual time T")
    run.set_defaults(func=cmd_run)

    serve = sub.add_parser("serve", help="run the serial/telemetry service")
    serve.add_argument("--serial-port", type=int, default=7401)
    serve.add_argument("--telemetry-port", type=int, default=7402)
    serve.add_argument("--world", default=None)
    serve.add_argument("--time-mode", choices=("realtime", "fast"), default="realtime")
    serve.add_argument("--dt", type=float, default=DEFAULT_DT)
    serve.set_defaults(func=cmd_serve)

    repl = sub.add_parser("repl", help="interactive frame-at-a-time loop")
    repl.add_argument("--world", default=None)
    repl.add_argument("--dt", type=float, default=DEFAULT_DT)
    repl.set_defaults(func=cmd_repl)

    bench = sub.add_parser("bench", help="compare compiled and pure geometry kernels")
    bench.add_argument("--ticks", type=int, default=200_000,
                       help="simulated ticks per backend (default 200000)")
    bench.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return int(args.func(args))
    except CliEnvironmentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ExitStatus.ENVIRONMENT
    except KeyboardInterrupt:
        return ExitStatus.DONE


if __name__ == "__main__":
    sys.exit(main())
