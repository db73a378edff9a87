/**
 * Wire protocol spoken by the robot service's telemetry socket.
 *
 * The socket carries JSON messages in both directions. Inbound (from the
 * service): a one-time world hello, response lines for frames this client
 * sent, broadcast event lines, and periodic telemetry records. Outbound
 * (to the service): exactly two control messages, frame and btn.
 */

/** Robot body radius in meters; the distance reading starts at the body edge. */
export const BODY_RADIUS_M = 0.08;

/** Distance sensor ceiling, in centimeters. */
export const MAX_DISTANCE_CM = 400;

export type Phase =
  | "idle"
  | "await_button"
  | "running"
  | "done"
  | "faulted"
  | "preempted";

const PHASES: readonly string[] = [
  "idle",
  "await_button",
  "running",
  "done",
  "faulted",
  "preempted",
];

/** One periodic robot-state sample. Keys mirror the wire record exactly. */
export interface TelemetryRecord {
  t: number;
  x: number;
  y: number;
  theta: number;
  ml: number;
  mr: number;
  light_l: number;
  light_r: number;
  distance: number;
  phase: Phase;
}

/** Arena geometry as sent in the hello message (the world-file JSON shape). */
export interface World {
  /** Segments [x1, y1, x2, y2] in meters. */
  walls: number[][];
  /** Discs [cx, cy, radius] in meters. */
  circles: number[][];
  /** Point sources [x, y] or [x, y, intensity]. */
  lights: number[][];
  /** Starting pose [x, y, theta]. */
  robot_start: number[];
}

export type ServerMessage =
  | { kind: "hello"; world: World }
  | { kind: "response"; line: string }
  | { kind: "event"; line: string }
  | { kind: "telemetry"; record: TelemetryRecord };

const RECORD_NUMBER_KEYS = [
  "t",
  "x",
  "y",
  "theta",
  "ml",
  "mr",
  "light_l",
  "light_r",
  "distance",
] as const;

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

function asTelemetry(obj: Record<string, unknown>): TelemetryRecord | null {
  for (const key of RECORD_NUMBER_KEYS) {
    if (typeof obj[key] !== "number") return null;
  }
  const phase = obj["phase"];
  if (typeof phase !== "string" || !PHASES.includes(phase)) return null;
  return obj as unknown as TelemetryRecord;
}

function asWorld(obj: unknown): World | null {
  if (!isRecord(obj)) return null;
  const { walls, circles, lights, robot_start } = obj;
  if (!Array.isArray(walls) || !Array.isArray(circles) || !Array.isArray(lights)) {
    return null;
  }
  if (!Array.isArray(robot_start) || robot_start.length !== 3) return null;
  return obj as unknown as World;
}

/**
 * Decode one inbound socket message. Returns null for anything that is not
 * a well-formed server message; callers decide whether to log the raw text.
 */
export function parseServerMessage(data: string): ServerMessage | null {
  let obj: unknown;
  try {
    obj = JSON.parse(data);
  } catch {
    return null;
  }
  if (!isRecord(obj)) return null;
  if ("world" in obj) {
    const world = asWorld(obj["world"]);
    return world ? { kind: "hello", world } : null;
  }
  if ("resp" in obj) {
    return typeof obj["resp"] === "string" ? { kind: "response", line: obj["resp"] } : null;
  }
  if ("evt" in obj) {
    return typeof obj["evt"] === "string" ? { kind: "event", line: obj["evt"] } : null;
  }
  const record = asTelemetry(obj);
  return record ? { kind: "telemetry", record } : null;
}

/** Encode the frame control message. */
export function frameMessage(text: string): string {
  return JSON.stringify({ cmd: "frame", text });
}

/** Encode the virtual-button control message. */
export function buttonMessage(): string {
  return JSON.stringify({ cmd: "btn" });
}

/** Visual tone of a response or event line in the console. */
export type LineTone = "ok" | "error" | "event" | "terminal" | "info";

export function classifyLine(line: string): LineTone {
  if (line.startsWith("ERR ")) return "error";
  if (line === "PONG" || line === "ACK") return "ok";
  if (line.startsWith("EVT ")) return "event";
  if (line === "DONE" || line === "PREEMPTED") return "terminal";
  return "info";
}

export interface ErrDetail {
  /** 1-based source position; 0 means the error carries no position. */
  position: number;
  code: string;
}

/** Split an "ERR <position> <code>" line; null when the line is not one. */
export function parseErr(line: string): ErrDetail | null {
  const m = /^ERR (\d+) (\S+)$/.exec(line);
  if (!m) return null;
  return { position: Number(m[1]), code: m[2] };
}
