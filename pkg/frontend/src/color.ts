import { interpolateRgb } from "d3";

// Fixed palette: heat cells ramp white -> navy, gap fraction is grey,
// diffs split green (cluster A) / magenta (cluster B) around white.
export const HEAT_LOW = "#FFFFFF";
export const HEAT_HIGH = "#001F5B";
export const GAP_GREY = "#BDBDBD";
export const DIFF_POSITIVE = "#1B7F3B";
export const DIFF_NEGATIVE = "#C621AD";
export const EMPHASIS_GOLD = "#D4A017";
export const EMPHASIS_BLUE = "#1565C0";

const heat = interpolateRgb(HEAT_LOW, HEAT_HIGH);
const positive = interpolateRgb(HEAT_LOW, DIFF_POSITIVE);
const negative = interpolateRgb(HEAT_LOW, DIFF_NEGATIVE);

/** Heat-map cell fill for a proportion in [0, 1]. */
export function heatColor(value: number): string {
  return heat(Math.max(0, Math.min(1, value)));
}

/**
 * Signed difference fill. `scale` is the largest absolute value in the
 * grid; zero always renders pure white regardless of scale.
 */
export function diffColor(value: number, scale: number): string {
  if (value === 0 || scale <= 0) return heat(0);
  const t = Math.min(1, Math.abs(value) / scale);
  return value > 0 ? positive(t) : negative(t);
}

/** Link stroke width: sqrt of the subtree share, clamped to [1, 12] px. */
export function linkWidth(size: number, total: number): number {
  if (total <= 0) return 1;
  return Math.max(1, Math.min(12, 12 * Math.sqrt(size / total)));
}
