// Pure stimulus geometry. Everything here is deterministic: the same
// (mode, value, domain) always yields the same glyph, so a trial can be
// re-rendered pixel-identically at any time.

import type { DisplayMode } from "./api.js";

export interface Point {
  x: number;
  y: number;
}

export type GlyphSpec =
  | { kind: "pips"; points: Point[] }
  | { kind: "dots"; points: Point[] }
  | { kind: "fill"; fraction: number }
  | { kind: "disc"; radius: number };

export type DiscRadiusLaw = "sqrt" | "linear";

// Conventional dice-face pip positions on the 3x3 grid, as (col,row)
// cells. Ten pips do not fit a dice face; values above nine fall back
// to the heap arrangement.
const DICE_CELLS: Record<number, Array<[number, number]>> = {
  1: [[1, 1]],
  2: [[0, 0], [2, 2]],
  3: [[0, 0], [1, 1], [2, 2]],
  4: [[0, 0], [2, 0], [0, 2], [2, 2]],
  5: [[0, 0], [2, 0], [1, 1], [0, 2], [2, 2]],
  6: [[0, 0], [0, 1], [0, 2], [2, 0], [2, 1], [2, 2]],
  7: [[0, 0], [0, 1], [0, 2], [1, 1], [2, 0], [2, 1], [2, 2]],
  8: [[0, 0], [0, 1], [0, 2], [1, 0], [1, 2], [2, 0], [2, 1], [2, 2]],
  9: [[0, 0], [0, 1], [0, 2], [1, 0], [1, 1], [1, 2], [2, 0], [2, 1], [2, 2]],
};

function cellToUnit([col, row]: [number, number]): Point {
  // cell centers at 1/6, 3/6, 5/6 of the unit square
  return { x: (2 * col + 1) / 6, y: (2 * row + 1) / 6 };
}

/** Pip positions for a dice face, in unit-square coordinates. */
export function dicePips(value: number): Point[] {
  assertValue(value);
  const cells = DICE_CELLS[value];
  if (cells === undefined) {
    return heapDots(value);
  }
  return cells.map(cellToUnit);
}

const GOLDEN_ANGLE = Math.PI * (3 - Math.sqrt(5));

/**
 * Clustered dot positions for the heap mode: a sunflower-spiral packing
 * around the center. Fixed per value (randomized layouts are out of scope).
 */
export function heapDots(value: number): Point[] {
  assertValue(value);
  const points: Point[] = [];
  for (let i = 0; i < value; i++) {
    const r = value === 1 ? 0 : 0.42 * Math.sqrt((i + 0.5) / value);
    const theta = i * GOLDEN_ANGLE;
    points.push({
      x: 0.5 + r * Math.cos(theta),
      y: 0.5 + r * Math.sin(theta),
    });
  }
  return points;
}

/** Fill fraction of the liquid-level rectangle. */
export function rectFill(value: number, domainMax: number): number {
  assertValue(value);
  if (domainMax < value) {
    throw new RangeError(`domain maximum ${domainMax} below value ${value}`);
  }
  return value / domainMax;
}

/**
 * Disc radius as a fraction of the slot's half-extent. The default law is
 * area-proportional (radius ~ sqrt(value)); "linear" scales the radius
 * itself. Both are strictly increasing in value.
 */
export function discRadius(
  value: number,
  domainMax: number,
  law: DiscRadiusLaw = "sqrt",
): number {
  assertValue(value);
  if (domainMax < value) {
    throw new RangeError(`domain maximum ${domainMax} below value ${value}`);
  }
  const minFraction = 0.12; // the smallest value must stay clearly visible
  const scale =
    law === "sqrt"
      ? Math.sqrt(value) / Math.sqrt(domainMax)
      : value / domainMax;
  return minFraction + (1 - minFraction) * scale;
}

export function glyphFor(
  mode: DisplayMode,
  value: number,
  domainMax: number,
  law: DiscRadiusLaw = "sqrt",
): GlyphSpec {
  switch (mode) {
    case "dice":
      return { kind: "pips", points: dicePips(value) };
    case "heap":
      return { kind: "dots", points: heapDots(value) };
    case "rect":
      return { kind: "fill", fraction: rectFill(value, domainMax) };
    case "disc":
      return { kind: "disc", radius: discRadius(value, domainMax, law) };
  }
}

export interface SlotRegion {
  slot: number;
  x: number;
  y: number;
  width: number;
  height: number;
}

/**
 * Side-by-side full-height touch regions, one per presented value. The
 * whole column is touch-active: subjects need large targets.
 */
export function layoutSlots(
  count: number,
  width: number,
  height: number,
): SlotRegion[] {
  if (count < 1) {
    throw new RangeError(`need at least one slot, got ${count}`);
  }
  const slotWidth = width / count;
  const regions: SlotRegion[] = [];
  for (let slot = 0; slot < count; slot++) {
    regions.push({ slot, x: slot * slotWidth, y: 0, width: slotWidth, height });
  }
  return regions;
}

/** The slot containing the touch point, or null for dead space. */
export function hitTest(regions: SlotRegion[], x: number, y: number): number | null {
  for (const r of regions) {
    if (x >= r.x && x < r.x + r.width && y >= r.y && y < r.y + r.height) {
      return r.slot;
    }
  }
  return null;
}

function assertValue(value: number): void {
  if (!Number.isInteger(value) || value < 1) {
    throw new RangeError(`value must be a positive integer, got ${value}`);
  }
}
