/**
 * DOM wiring: one store, one telemetry client, one render loop. All
 * simulation effects go through the client's two control messages.
 */

import { drawScene, SceneContext } from "./arena";
import { TelemetryClient } from "./client";
import { describePalette, Direction, paletteFrame, SetupMode } from "./palette";
import { createStore } from "./store";

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
}

const store = createStore();

const client = new TelemetryClient({
  onStatus: (status, detail) => store.dispatch({ type: "status", status, detail }),
  onMessage: (message) => store.dispatch({ type: "server", message }),
  onBadMessage: (raw) =>
    store.dispatch({ type: "server", message: { kind: "event", line: `unreadable: ${raw}` } }),
});

const urlInput = byId<HTMLInputElement>("url");
const connectBtn = byId<HTMLButtonElement>("connect");
const statusEl = byId<HTMLElement>("status");
const canvas = byId<HTMLCanvasElement>("arena");
const consoleEl = byId<HTMLElement>("console");
const clearBtn = byId<HTMLButtonElement>("clear");
const editorEl = byId<HTMLTextAreaElement>("editor");
const sendEditorBtn = byId<HTMLButtonElement>("send-editor");
const buttonBtn = byId<HTMLButtonElement>("virtual-button");
const setupSel = byId<HTMLSelectElement>("palette-setup");
const directionSel = byId<HTMLSelectElement>("palette-direction");
const timeRange = byId<HTMLInputElement>("palette-time");
const powerRange = byId<HTMLInputElement>("palette-power");
const paletteLabel = byId<HTMLElement>("palette-label");
const sendPaletteBtn = byId<HTMLButtonElement>("send-palette");
const readoutEl = byId<HTMLElement>("readouts");

function sendFrameText(text: string): void {
  const trimmed = text.trim();
  if (!trimmed) return;
  if (client.sendFrame(trimmed)) {
    store.dispatch({ type: "sent", line: trimmed });
  }
}

connectBtn.addEventListener("click", () => {
  if (store.getState().status === "connected") {
    client.close();
  } else {
    client.connect(urlInput.value.trim());
  }
});

clearBtn.addEventListener("click", () => store.dispatch({ type: "clear-console" }));

sendEditorBtn.addEventListener("click", () => sendFrameText(store.getState().editor));
editorEl.addEventListener("input", () => store.dispatch({ type: "editor", text: editorEl.value }));
editorEl.addEventListener("keydown", (ev) => {
  if (ev.key === "Enter" && (ev.ctrlKey || ev.metaKey)) {
    ev.preventDefault();
    sendFrameText(store.getState().editor);
  }
});

buttonBtn.addEventListener("click", () => {
  if (client.sendButton()) {
    store.dispatch({ type: "sent", line: "BTN" });
  }
});

function paletteFromControls(): void {
  store.dispatch({
    type: "palette",
    params: {
      setup: setupSel.value as SetupMode,
      direction: directionSel.value as Direction,
      time: Number(timeRange.value),
      power: Number(powerRange.value),
    },
  });
}
for (const el of [setupSel, directionSel, timeRange, powerRange]) {
  el.addEventListener("input", paletteFromControls);
}
sendPaletteBtn.addEventListener("click", () => {
  sendFrameText(paletteFrame(store.getState().palette));
});

const STATUS_TEXT = {
  disconnected: "disconnected",
  connecting: "connecting…",
  connected: "connected",
  error: "connection error",
} as const;

function renderStatus(): void {
  const { status, statusDetail } = store.getState();
  statusEl.textContent = statusDetail ? `${STATUS_TEXT[status]} (${statusDetail})` : STATUS_TEXT[status];
  statusEl.dataset.status = status;
  connectBtn.textContent = status === "connected" ? "Disconnect" : "Connect";
}

function renderConsole(): void {
  const entries = store.getState().console;
  consoleEl.replaceChildren(
    ...entries.map((entry) => {
      const div = document.createElement("div");
      div.className = `line tone-${entry.tone} dir-${entry.dir}`;
      div.textContent = entry.dir === "out" ? `→ ${entry.line}` : entry.line;
      return div;
    }),
  );
  consoleEl.scrollTop = consoleEl.scrollHeight;
}

function renderReadouts(): void {
  const latest = store.getState().latest;
  if (!latest) {
    readoutEl.textContent = "no telemetry yet";
    return;
  }
  const parts = [
    `t ${latest.t.toFixed(2)} s`,
    `x ${latest.x.toFixed(3)} m`,
    `y ${latest.y.toFixed(3)} m`,
    `θ ${latest.theta.toFixed(3)} rad`,
    `motors ${latest.ml.toFixed(0)} / ${latest.mr.toFixed(0)}`,
    `distance ${latest.distance.toFixed(1)} cm`,
    `light ${latest.light_l.toFixed(1)} / ${latest.light_r.toFixed(1)}`,
    `phase ${latest.phase}`,
  ];
  readoutEl.textContent = parts.join("   ");
  buttonBtn.classList.toggle("pulse", latest.phase === "await_button");
}

function renderPalette(): void {
  paletteLabel.textContent = describePalette(store.getState().palette);
}

function renderArena(): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  const rect = canvas.getBoundingClientRect();
  if (canvas.width !== rect.width || canvas.height !== rect.height) {
    canvas.width = rect.width;
    canvas.height = rect.height;
  }
  const { world, latest, trail } = store.getState();
  drawScene(ctx as SceneContext, { world, latest, trail }, canvas.width, canvas.height);
}

let dirty = true;
store.subscribe(() => {
  dirty = true;
});

function frame(): void {
  if (dirty) {
    dirty = false;
    renderStatus();
    renderConsole();
    renderReadouts();
    renderPalette();
    renderArena();
  }
  requestAnimationFrame(frame);
}

editorEl.value = store.getState().editor;
paletteFromControls();
renderPalette();
requestAnimationFrame(frame);
