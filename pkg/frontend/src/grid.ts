/**
 * Stroke capture model and rasterization.
 *
 * The pad records strokes as point sequences on a 300x300 logical surface.
 * Rasterization paints every stroke with a 3-pixel brush onto a bit buffer,
 * then folds each 10x10 block into one cell of the 30x30 grid via OR. It is
 * a pure function of the stroke list, so identical drawings always produce
 * identical grids.
 */

export const CANVAS_SIZE = 300;
export const GRID_SIZE = 30;
export const BLOCK = CANVAS_SIZE / GRID_SIZE;
const BRUSH_HALF = 1; // offsets -1..1 give the 3-pixel brush width

export interface Point {
  x: number;
  y: number;
}

export type Stroke = Point[];

export interface CanvasState {
  strokes: Stroke[];
  currentLabel: number | null;
}

export function emptyState(): CanvasState {
  return { strokes: [], currentLabel: null };
}

export function hasInk(state: CanvasState): boolean {
  return state.strokes.some((s) => s.length > 0);
}

function clampCoord(v: number): number {
  return Math.min(Math.max(Math.round(v), 0), CANVAS_SIZE - 1);
}

function stamp(buffer: Uint8Array, x: number, y: number): void {
  const cx = clampCoord(x);
  const cy = clampCoord(y);
  for (let dy = -BRUSH_HALF; dy <= BRUSH_HALF; dy++) {
    const py = cy + dy;
    if (py < 0 || py >= CANVAS_SIZE) continue;
    for (let dx = -BRUSH_HALF; dx <= BRUSH_HALF; dx++) {
      const px = cx + dx;
      if (px < 0 || px >= CANVAS_SIZE) continue;
      buffer[py * CANVAS_SIZE + px] = 1;
    }
  }
}

function paintSegment(buffer: Uint8Array, a: Point, b: Point): void {
  const steps = Math.max(2, Math.ceil(Math.hypot(b.x - a.x, b.y - a.y)) * 2);
  for (let i = 0; i <= steps; i++) {
    const t = i / steps;
    stamp(buffer, a.x + t * (b.x - a.x), a.y + t * (b.y - a.y));
  }
}

/** Paint all strokes onto the 300x300 surface and OR-pool to 30x30. */
export function rasterize(strokes: Stroke[]): number[][] {
  const buffer = new Uint8Array(CANVAS_SIZE * CANVAS_SIZE);
  for (const stroke of strokes) {
    if (stroke.length === 0) continue;
    if (stroke.length === 1) {
      stamp(buffer, stroke[0].x, stroke[0].y);
      continue;
    }
    for (let i = 1; i < stroke.length; i++) {
      paintSegment(buffer, stroke[i - 1], stroke[i]);
    }
  }
  const grid: number[][] = [];
  for (let r = 0; r < GRID_SIZE; r++) {
    const row: number[] = new Array(GRID_SIZE).fill(0);
    for (let c = 0; c < GRID_SIZE; c++) {
      outer: for (let y = r * BLOCK; y < (r + 1) * BLOCK; y++) {
        for (let x = c * BLOCK; x < (c + 1) * BLOCK; x++) {
          if (buffer[y * CANVAS_SIZE + x]) {
            row[c] = 1;
            break outer;
          }
        }
      }
    }
    grid.push(row);
  }
  return grid;
}

/** Grid rows as the wire form: 30 strings of 30 "0"/"1" characters. */
export function gridRows(grid: number[][]): string[] {
  return grid.map((row) => row.map((v) => (v ? "1" : "0")).join(""));
}

export function gridIsEmpty(grid: number[][]): boolean {
  return grid.every((row) => row.every((v) => v === 0));
}
