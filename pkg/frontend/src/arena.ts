/**
 * Arena rendering: world geometry and the latest telemetry record drawn to
 * a 2D canvas. Everything except the actual canvas calls is pure, and the
 * draw routine takes a structural context so tests can pass a recorder.
 */

import { BODY_RADIUS_M, TelemetryRecord, World } from "./protocol";

export interface Bounds {
  minX: number;
  minY: number;
  maxX: number;
  maxY: number;
}

/** Margin added around the world extents, in meters. */
export const MARGIN_M = 0.25;

/** Axis-aligned extent of everything in the world, margin included. */
export function worldBounds(world: World | null): Bounds {
  let minX = Infinity;
  let minY = Infinity;
  let maxX = -Infinity;
  let maxY = -Infinity;
  const grow = (x: number, y: number) => {
    minX = Math.min(minX, x);
    minY = Math.min(minY, y);
    maxX = Math.max(maxX, x);
    maxY = Math.max(maxY, y);
  };
  if (world) {
    for (const [x1, y1, x2, y2] of world.walls as [number, number, number, number][]) {
      grow(x1, y1);
      grow(x2, y2);
    }
    for (const [cx, cy, r] of world.circles as [number, number, number][]) {
      grow(cx - r, cy - r);
      grow(cx + r, cy + r);
    }
    for (const light of world.lights) {
      grow(light[0], light[1]);
    }
    grow(world.robot_start[0], world.robot_start[1]);
  }
  if (!Number.isFinite(minX)) {
    minX = -1;
    minY = -1;
    maxX = 1;
    maxY = 1;
  }
  // A point-like world (empty arena, robot at origin) still needs area.
  if (maxX - minX < 2) {
    const cx = (minX + maxX) / 2;
    minX = cx - 1;
    maxX = cx + 1;
  }
  if (maxY - minY < 2) {
    const cy = (minY + maxY) / 2;
    minY = cy - 1;
    maxY = cy + 1;
  }
  return {
    minX: minX - MARGIN_M,
    minY: minY - MARGIN_M,
    maxX: maxX + MARGIN_M,
    maxY: maxY + MARGIN_M,
  };
}

/** World-to-canvas transform: one scale (pixels per meter), y flipped. */
export interface Viewport {
  scale: number;
  offsetX: number;
  offsetY: number;
}

/** Fit bounds into a canvas, preserving aspect and centering the content. */
export function fitViewport(bounds: Bounds, width: number, height: number): Viewport {
  const dx = bounds.maxX - bounds.minX;
  const dy = bounds.maxY - bounds.minY;
  const scale = Math.min(width / dx, height / dy);
  const cx = (bounds.minX + bounds.maxX) / 2;
  const cy = (bounds.minY + bounds.maxY) / 2;
  return {
    scale,
    offsetX: width / 2 - cx * scale,
    offsetY: height / 2 + cy * scale,
  };
}

export function toCanvas(vp: Viewport, x: number, y: number): { x: number; y: number } {
  return { x: vp.offsetX + x * vp.scale, y: vp.offsetY - y * vp.scale };
}

/**
 * World-space end of the distance-sensor ray: the reading is measured from
 * the body edge, so the ray spans body radius plus the reading.
 */
export function rayEndpoint(record: TelemetryRecord): { x: number; y: number } {
  const reach = BODY_RADIUS_M + record.distance / 100;
  return {
    x: record.x + reach * Math.cos(record.theta),
    y: record.y + reach * Math.sin(record.theta),
  };
}

/** The subset of CanvasRenderingContext2D the scene uses. */
export interface SceneContext {
  strokeStyle: string | CanvasGradient | CanvasPattern;
  fillStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  clearRect(x: number, y: number, w: number, h: number): void;
  fillRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  stroke(): void;
  fill(): void;
}

/** What drawScene put on the canvas, for tests and debugging overlays. */
export interface SceneReport {
  walls: number;
  circles: number;
  lights: number;
  robotDrawn: boolean;
  /** Canvas-space ray segment, present when a pose was drawn. */
  ray: { x0: number; y0: number; x1: number; y1: number } | null;
}

export interface SceneInput {
  world: World | null;
  latest: TelemetryRecord | null;
  trail: { x: number; y: number }[];
}

const COLORS = {
  background: "#10141a",
  wall: "#aeb7c4",
  circle: "#5b6b80",
  light: "#ffd75e",
  trail: "#3b82f680",
  body: "#e8eef6",
  heading: "#10141a",
  ray: "#f87171",
};

export function drawScene(
  ctx: SceneContext,
  input: SceneInput,
  width: number,
  height: number,
): SceneReport {
  const report: SceneReport = { walls: 0, circles: 0, lights: 0, robotDrawn: false, ray: null };
  const vp = fitViewport(worldBounds(input.world), width, height);

  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = COLORS.background;
  ctx.fillRect(0, 0, width, height);

  if (input.world) {
    ctx.strokeStyle = COLORS.wall;
    ctx.lineWidth = 3;
    for (const [x1, y1, x2, y2] of input.world.walls as [number, number, number, number][]) {
      const a = toCanvas(vp, x1, y1);
      const b = toCanvas(vp, x2, y2);
      ctx.beginPath();
      ctx.moveTo(a.x, a.y);
      ctx.lineTo(b.x, b.y);
      ctx.stroke();
      report.walls += 1;
    }
    ctx.fillStyle = COLORS.circle;
    for (const [cx, cy, r] of input.world.circles as [number, number, number][]) {
      const c = toCanvas(vp, cx, cy);
      ctx.beginPath();
      ctx.arc(c.x, c.y, r * vp.scale, 0, Math.PI * 2);
      ctx.fill();
      report.circles += 1;
    }
    ctx.fillStyle = COLORS.light;
    for (const light of input.world.lights) {
      const c = toCanvas(vp, light[0], light[1]);
      ctx.beginPath();
      ctx.arc(c.x, c.y, 5, 0, Math.PI * 2);
      ctx.fill();
      report.lights += 1;
    }
  }

  if (input.trail.length >= 2) {
    ctx.strokeStyle = COLORS.trail;
    ctx.lineWidth = 2;
    ctx.beginPath();
    const first = toCanvas(vp, input.trail[0].x, input.trail[0].y);
    ctx.moveTo(first.x, first.y);
    for (const point of input.trail.slice(1)) {
      const p = toCanvas(vp, point.x, point.y);
      ctx.lineTo(p.x, p.y);
    }
    ctx.stroke();
  }

  const pose = input.latest
    ? { x: input.latest.x, y: input.latest.y, theta: input.latest.theta }
    : input.world
      ? {
          x: input.world.robot_start[0],
          y: input.world.robot_start[1],
          theta: input.world.robot_start[2],
        }
      : null;
  if (pose) {
    const center = toCanvas(vp, pose.x, pose.y);
    const radius = BODY_RADIUS_M * vp.scale;

    if (input.latest) {
      const edge = toCanvas(
        vp,
        pose.x + BODY_RADIUS_M * Math.cos(pose.theta),
        pose.y + BODY_RADIUS_M * Math.sin(pose.theta),
      );
      const tip = rayEndpoint(input.latest);
      const end = toCanvas(vp, tip.x, tip.y);
      ctx.strokeStyle = COLORS.ray;
      ctx.lineWidth = 1.5;
      ctx.beginPath();
      ctx.moveTo(edge.x, edge.y);
      ctx.lineTo(end.x, end.y);
      ctx.stroke();
      report.ray = { x0: edge.x, y0: edge.y, x1: end.x, y1: end.y };
    }

    ctx.fillStyle = COLORS.body;
    ctx.beginPath();
    ctx.arc(center.x, center.y, radius, 0, Math.PI * 2);
    ctx.fill();

    const nose = toCanvas(
      vp,
      pose.x + BODY_RADIUS_M * Math.cos(pose.theta),
      pose.y + BODY_RADIUS_M * Math.sin(pose.theta),
    );
    ctx.strokeStyle = COLORS.heading;
    ctx.lineWidth = 2;
    ctx.beginPath();
    ctx.moveTo(center.x, center.y);
    ctx.lineTo(nose.x, nose.y);
    ctx.stroke();
    report.robotDrawn = true;
  }

  return report;
}
