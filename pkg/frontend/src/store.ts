/**
 * Single state store for the UI session. Socket events, control input,
 * and editor changes all funnel through one reducer; the render loop reads
 * the latest state. There is no other mutable state in the app.
 */

import { classifyLine, LineTone, ServerMessage, TelemetryRecord, World } from "./protocol";
import { DEFAULT_PALETTE, PaletteParams } from "./palette";

export type ConnectionStatus = "disconnected" | "connecting" | "connected" | "error";

export interface ConsoleEntry {
  seq: number;
  /** "in" for service lines, "out" for lines this client sent. */
  dir: "in" | "out";
  line: string;
  tone: LineTone;
}

export interface UiSessionState {
  status: ConnectionStatus;
  statusDetail: string;
  world: World | null;
  latest: TelemetryRecord | null;
  trail: { x: number; y: number }[];
  console: ConsoleEntry[];
  editor: string;
  palette: PaletteParams;
  nextSeq: number;
}

/** Console keeps the last 500 frames. */
export const SCROLLBACK_LIMIT = 500;

/** Drawn robot path keeps this many samples. */
export const TRAIL_LIMIT = 2000;

export function initialState(): UiSessionState {
  return {
    status: "disconnected",
    statusDetail: "",
    world: null,
    latest: null,
    trail: [],
    console: [],
    editor: "SI|F(2, 80)",
    palette: { ...DEFAULT_PALETTE },
    nextSeq: 1,
  };
}

export type Action =
  | { type: "status"; status: ConnectionStatus; detail?: string }
  | { type: "server"; message: ServerMessage }
  | { type: "sent"; line: string }
  | { type: "editor"; text: string }
  | { type: "palette"; params: PaletteParams }
  | { type: "clear-console" };

function appendConsole(
  state: UiSessionState,
  dir: "in" | "out",
  line: string,
  tone: LineTone,
): UiSessionState {
  const entry: ConsoleEntry = { seq: state.nextSeq, dir, line, tone };
  const console = [...state.console, entry].slice(-SCROLLBACK_LIMIT);
  return { ...state, console, nextSeq: state.nextSeq + 1 };
}

function applyTelemetry(state: UiSessionState, record: TelemetryRecord): UiSessionState {
  const last = state.trail[state.trail.length - 1];
  let trail = state.trail;
  if (!last || last.x !== record.x || last.y !== record.y) {
    trail = [...trail, { x: record.x, y: record.y }].slice(-TRAIL_LIMIT);
  }
  return { ...state, latest: record, trail };
}

function applyServer(state: UiSessionState, message: ServerMessage): UiSessionState {
  switch (message.kind) {
    case "hello":
      return { ...state, world: message.world, latest: null, trail: [] };
    case "response":
      return appendConsole(state, "in", message.line, classifyLine(message.line));
    case "event":
      return appendConsole(state, "in", message.line, classifyLine(message.line));
    case "telemetry":
      return applyTelemetry(state, message.record);
  }
}

export function reduce(state: UiSessionState, action: Action): UiSessionState {
  switch (action.type) {
    case "status":
      return { ...state, status: action.status, statusDetail: action.detail ?? "" };
    case "server":
      return applyServer(state, action.message);
    case "sent":
      return appendConsole(state, "out", action.line, "info");
    case "editor":
      return { ...state, editor: action.text };
    case "palette":
      return { ...state, palette: action.params };
    case "clear-console":
      return { ...state, console: [] };
  }
}

export interface Store {
  getState(): UiSessionState;
  dispatch(action: Action): void;
  subscribe(listener: () => void): () => void;
}

export function createStore(): Store {
  let state = initialState();
  const listeners = new Set<() => void>();
  return {
    getState: () => state,
    dispatch(action) {
      state = reduce(state, action);
      for (const listener of listeners) listener();
    },
    subscribe(listener) {
      listeners.add(listener);
      return () => listeners.delete(listener);
    },
  };
}
