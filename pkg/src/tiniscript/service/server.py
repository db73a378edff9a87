"""TCP serial channel plus telemetry socket server around one simulated robot.

Three logical activities share nothing but queues: serial readers and
telemetry subscribers enqueue commands; a single engine task owns the
session and simulation, answers every command in arrival order, and
fans telemetry and asynchronous response frames out to subscribers.

Time modes: realtime paces the virtual clock against the wall clock and
keeps ticking while idle so telemetry stays live; fast ticks flat out
while a program is running and otherwise blocks on the command queue,
which freezes virtual time between frames and makes transcripts
reproducible for tests.
"""

from __future__ import annotations

import asyncio
import json
import logging
import os
from dataclasses import dataclass, field

from websockets.asyncio.server import serve as ws_serve
from websockets.exceptions import ConnectionClosed

from ..interp import Phase
from ..lang import Frame, SetupMode
from ..runner import DEFAULT_DT, Stepper
from ..sim import RobotParams, SimRobot, WorldModel
from .protocol import (
    ACK,
    BTN,
    EVT_BUTTON_WAIT,
    MAX_REQUEST_BYTES,
    PONG,
    decode_request,
    err_line,
    event_to_wire,
    telemetry_record,
)

log = logging.getLogger("tiniscript.service")

TELEMETRY_PERIOD = 0.05
SUBSCRIBER_QUEUE = 1024
# Serial reader buffer: longer than any legal request so oversized lines
# are still read whole, then refused with line_too_long.
READER_LIMIT = MAX_REQUEST_BYTES * 4
_FAST_YIELD_TICKS = 200


@dataclass(frozen=True, slots=True)
class ServiceConfig:
    serial_port: int = 7401
    telemetry_port: int = 7402
    world: WorldModel = field(default_factory=WorldModel)
    params: RobotParams = field(default_factory=RobotParams)
    time_mode: str = "realtime"
    dt: float = DEFAULT_DT

    def __post_init__(self) -> None:
        if self.time_mode not in ("realtime", "fast"):
            raise ValueError(f"unknown time_mode: {self.time_mode}")
        if not 0 < self.dt <= 0.1:
            raise ValueError("dt must be in (0, 0.1]")


class _Subscriber:
    """One telemetry connection: bounded queue, drop-oldest under pressure."""

    def __init__(self) -> None:
        self.queue: asyncio.Queue[str] = asyncio.Queue(maxsize=SUBSCRIBER_QUEUE)

    def push(self, message: str) -> None:
        while True:
            try:
                self.queue.put_nowait(message)
                return
            except asyncio.QueueFull:
                try:
                    self.queue.get_nowait()
                except asyncio.QueueEmpty:
                    pass


class Service:
    """One robot, one serial client, any number of telemetry subscribers."""

    def __init__(self, config: ServiceConfig):
        self.config = config
        self.robot = SimRobot(world=config.world, params=config.params)
        self.stepper: Stepper | None = None
        self.commands: asyncio.Queue = asyncio.Queue()
        self.subscribers: set[_Subscriber] = set()
        self.serial_writer: asyncio.StreamWriter | None = None
        self._tick_index = 0
        self._telemetry_every = max(1, round(TELEMETRY_PERIOD / config.dt))
        self._servers: list = []
        self._engine_task: asyncio.Task | None = None
        self.serial_address: tuple[str, int] | None = None
        self.telemetry_address: tuple[str, int] | None = None

    # -- engine: exclusive owner of session and simulation ---------------------

    def _send_serial(self, line: str) -> None:
        if self.serial_writer is not None and not self.serial_writer.is_closing():
            self.serial_writer.write((line + "\n").encode("utf-8"))

    def _broadcast_event(self, line: str) -> None:
        self._send_serial(line)
        message = json.dumps({"evt": line}, separators=(", ", ": "))
        for sub in self.subscribers:
            sub.push(message)

    def _publish_telemetry(self) -> None:
        state = self.robot.state()
        record = telemetry_record(
            t=state.t,
            x=state.pose.x,
            y=state.pose.y,
            theta=state.pose.theta,
            ml=state.motor_left,
            mr=state.motor_right,
            light_l=self.robot.read_light("L"),
            light_r=self.robot.read_light("R"),
            distance=self.robot.read_distance(),
            phase=self.stepper.phase if self.stepper else None,
        )
        for sub in self.subscribers:
            sub.push(record)

    def _tick_once(self) -> None:
        if self.stepper is not None:
            for event in self.stepper.tick():
                line = event_to_wire(event)
                if line is not None:
                    self._broadcast_event(line)
        else:
            self.robot.tick(self.config.dt)
        self._tick_index += 1
        if self._tick_index % self._telemetry_every == 0:
            self._publish_telemetry()

    def _handle_frame(self, frame: Frame, respond) -> None:
        if frame.setup is SetupMode.PING:
            respond(PONG)
            return
        if self.stepper is None:
            self.stepper = Stepper(
                frame, robot=self.robot, dt=self.config.dt
            )
        else:
            for event in self.stepper.replace(frame):
                line = event_to_wire(event)
                if line is not None:
                    self._broadcast_event(line)
        respond(ACK)
        if self.stepper.phase is Phase.AWAIT_BUTTON:
            self._broadcast_event(EVT_BUTTON_WAIT)

    def _handle_command(self, command) -> None:
        kind = command[0]
        if kind == "line":
            _, text, respond = command
            decoded = decode_request(text)
            if isinstance(decoded, str):
                respond(decoded)
            else:
                self._handle_frame(decoded, respond)
        elif kind == "btn":
            if self.stepper is not None:
                self.stepper.press_button()

    def _running(self) -> bool:
        return self.stepper is not None and self.stepper.phase is Phase.RUNNING

    async def _engine_fast(self) -> None:
        while True:
            if self._running():
                drained = False
                while True:
                    try:
                        command = self.commands.get_nowait()
                    except asyncio.QueueEmpty:
                        break
                    self._handle_command(command)
                    drained = True
                if drained:
                    continue
                self._tick_once()
                if self._tick_index % _FAST_YIELD_TICKS == 0:
                    await asyncio.sleep(0)
            else:
                self._handle_command(await self.commands.get())

    async def _engine_realtime(self) -> None:
        loop = asyncio.get_running_loop()
        anchor = loop.time()
        ticked = 0
        while True:
            due = anchor + (ticked + 1) * self.config.dt
            delay = due - loop.time()
            if delay <= 0:
                self._tick_once()
                ticked += 1
                # Late by more than a second: rebase instead of sprinting.
                if loop.time() - due > 1.0:
                    anchor = loop.time() - ticked * self.config.dt
                continue
            try:
                command = await asyncio.wait_for(self.commands.get(), timeout=delay)
            except asyncio.TimeoutError:
                continue
            self._handle_command(command)

    # -- serial transport -------------------------------------------------------

    async def _serial_client(self, reader: asyncio.StreamReader,
                             writer: asyncio.StreamWriter) -> None:
        if self.serial_writer is not None:
            writer.write((err_line(0, "busy") + "\n").encode("utf-8"))
            await writer.drain()
            writer.close()
            return
        self.serial_writer = writer
        log.info("serial client connected")

        def respond(line: str) -> None:
            self._send_serial(line)

        try:
            while True:
                try:
                    raw = await reader.readline()
                except ValueError:
                    # line exceeded even the oversized reader buffer
                    self._send_serial(err_line(0, "line_too_long"))
                    break
                if not raw:
                    break
                text = raw.decode("utf-8", errors="replace").rstrip("\r\n")
                if text == BTN:
                    await self.commands.put(("btn",))
                    continue
                await self.commands.put(("line", text, respond))
                await writer.drain()
        except ConnectionResetError:
            pass
        finally:
            log.info("serial client disconnected")
            self.serial_writer = None
            writer.close()

    # -- telemetry transport ------------------------------------------------------

    async def _telemetry_client(self, websocket) -> None:
        sub = _Subscriber()
        hello = json.dumps(
            {"world": self.config.world.to_json_dict()},
            separators=(", ", ": "),
        )
        sub.push(hello)
        self.subscribers.add(sub)

        def respond(line: str) -> None:
            sub.push(json.dumps({"resp": line}, separators=(", ", ": ")))

        async def pump_out() -> None:
            while True:
                await websocket.send(await sub.queue.get())

        sender = asyncio.create_task(pump_out())
        try:
            async for raw in websocket:
                try:
                    control = json.loads(raw)
                    cmd = control["cmd"]
                except (json.JSONDecodeError, TypeError, KeyError):
                    respond(err_line(0, "bad_control"))
                    continue
                if cmd == "frame" and isinstance(control.get("text"), str):
                    await self.commands.put(("line", control["text"], respond))
                elif cmd == "btn":
                    await self.commands.put(("btn",))
                else:
                    respond(err_line(0, "bad_control"))
        except ConnectionClosed:
            pass
        finally:
            sender.cancel()
            self.subscribers.discard(sub)

    # -- lifecycle ----------------------------------------------------------------

    async def start(self) -> None:
        engine = (
            self._engine_fast()
            if self.config.time_mode == "fast"
            else self._engine_realtime()
        )
        self._engine_task = asyncio.create_task(engine)
        serial_server = await asyncio.start_server(
            self._serial_client,
            host="127.0.0.1",
            port=self.config.serial_port,
            limit=READER_LIMIT,
        )
        telemetry_server = await ws_serve(
            self._telemetry_client,
            host="127.0.0.1",
            port=self.config.telemetry_port,
        )
        self._servers = [serial_server, telemetry_server]
        self.serial_address = serial_server.sockets[0].getsockname()[:2]
        for sock in telemetry_server.sockets:
            self.telemetry_address = sock.getsockname()[:2]
            break
        log.info(
            "listening: serial on %s, telemetry on %s",
            self.serial_address, self.telemetry_address,
        )

    async def stop(self) -> None:
        if self._engine_task is not None:
            self._engine_task.cancel()
            try:
                await self._engine_task
            except asyncio.CancelledError:
                pass
        for server in self._servers:
            server.close()
            await server.wait_closed()
        self._servers = []

    async def run_forever(self) -> None:
        await self.start()
        print(
            f"tini service: serial on port {self.serial_address[1]},"
            f" telemetry on port {self.telemetry_address[1]}"
            f" (mode={self.config.time_mode}, dt={self.config.dt})",
            flush=True,
        )
        try:
            await asyncio.Event().wait()
        finally:
            await self.stop()


def configure_logging() -> None:
    level = os.environ.get("TINI_LOG", "warning").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))


def serve(config: ServiceConfig) -> None:
    """Blocking entry point: run the service until interrupted."""
    configure_logging()
    try:
        asyncio.run(Service(config).run_forever())
    except KeyboardInterrupt:
        pass
