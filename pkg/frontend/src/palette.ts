/**
 * Command palette: slider/selector parameters rendered as canonical frame
 * text. Palette output must always be accepted by the service, so the
 * formatting here sticks to the strictest spelling of the grammar.
 */

export type Direction = "forward" | "backward" | "left" | "right";

export type SetupMode = "SI" | "SB";

export interface PaletteParams {
  setup: SetupMode;
  direction: Direction;
  /** Seconds; clamped to [0, 600]. */
  time: number;
  /** Percent; clamped to [0, 100]. */
  power: number;
}

export const DEFAULT_PALETTE: PaletteParams = {
  setup: "SI",
  direction: "forward",
  time: 2,
  power: 80,
};

const LETTER: Record<Direction, string> = {
  forward: "F",
  backward: "B",
  left: "L",
  right: "R",
};

const LABEL: Record<Direction, string> = {
  forward: "Forward",
  backward: "Backward",
  left: "Left",
  right: "Right",
};

export const MAX_TIME_S = 600;
export const MAX_POWER = 100;

function clamp(value: number, lo: number, hi: number): number {
  if (!Number.isFinite(value)) return lo;
  return Math.min(hi, Math.max(lo, value));
}

/**
 * Canonical number spelling: up to three decimals, no trailing zeros, no
 * bare trailing dot, never negative (inputs are clamped first).
 */
export function formatAmount(value: number): string {
  return value.toFixed(3).replace(/0+$/, "").replace(/\.$/, "");
}

/** The single-command frame the palette sends, e.g. "SI|F(2, 80)". */
export function paletteFrame(params: PaletteParams): string {
  const time = clamp(params.time, 0, MAX_TIME_S);
  const power = clamp(params.power, 0, MAX_POWER);
  return `${params.setup}|${LETTER[params.direction]}(${formatAmount(time)}, ${formatAmount(power)})`;
}

/** Human label for the current palette choice, e.g. "Forward, 2 s, 80%". */
export function describePalette(params: PaletteParams): string {
  const time = clamp(params.time, 0, MAX_TIME_S);
  const power = clamp(params.power, 0, MAX_POWER);
  return `${LABEL[params.direction]}, ${formatAmount(time)} s, ${formatAmount(power)}%`;
}
