import { describe, expect, it } from "vitest";

import {
  CANVAS_SIZE,
  GRID_SIZE,
  Stroke,
  emptyState,
  gridIsEmpty,
  gridRows,
  hasInk,
  rasterize,
} from "../src/grid.js";

function fullCoverageStrokes(): Stroke[] {
  // horizontal passes every 5 px cover the whole surface with a 3px brush
  const strokes: Stroke[] = [];
  for (let y = 1; y < CANVAS_SIZE; y += 3) {
    strokes.push([
      { x: 0, y },
      { x: CANVAS_SIZE - 1, y },
    ]);
  }
  return strokes;
}

describe("rasterize", () => {
  it("produces an all-zero grid for no strokes", () => {
    const grid = rasterize([]);
    expect(grid.length).toBe(GRID_SIZE);
    expect(grid.every((row) => row.length === GRID_SIZE)).toBe(true);
    expect(gridIsEmpty(grid)).toBe(true);
  });

  it("fills the whole grid when the canvas is fully painted", () => {
    const grid = rasterize(fullCoverageStrokes());
    expect(grid.every((row) => row.every((v) => v === 1))).toBe(true);
  });

  it("maps a single dot at (15,15) to bit (1,1) only", () => {
    // the 3px brush around (15,15) covers pixels 14..16, all inside block (1,1)
    const grid = rasterize([[{ x: 15, y: 15 }]]);
    expect(grid[1][1]).toBe(1);
    let total = 0;
    for (const row of grid) for (const v of row) total += v;
    expect(total).toBe(1);
  });

  it("spreads a dot on a block boundary into the adjacent blocks", () => {
    // (10,10) paints 9..11 in both axes, touching blocks (0,0) through (1,1)
    const grid = rasterize([[{ x: 10, y: 10 }]]);
    expect(grid[0][0] + grid[0][1] + grid[1][0] + grid[1][1]).toBe(4);
  });

  it("is a pure function of the stroke list", () => {
    const strokes: Stroke[] = [
      [
        { x: 22.4, y: 31.9 },
        { x: 140.2, y: 180.7 },
        { x: 250.1, y: 60.3 },
      ],
      [{ x: 280, y: 280 }],
    ];
    const a = rasterize(strokes);
    const b = rasterize(strokes.map((s) => s.map((p) => ({ ...p }))));
    expect(a).toEqual(b);
  });

  it("clamps out-of-bounds points to the canvas", () => {
    const grid = rasterize([[{ x: -40, y: -40 }]]);
    expect(grid[0][0]).toBe(1);
    const grid2 = rasterize([[{ x: CANVAS_SIZE + 50, y: CANVAS_SIZE + 50 }]]);
    expect(grid2[GRID_SIZE - 1][GRID_SIZE - 1]).toBe(1);
  });

  it("renders a straight line into a connected band of cells", () => {
    const grid = rasterize([
      [
        { x: 5, y: 150 },
        { x: 295, y: 150 },
      ],
    ]);
    for (let c = 0; c < GRID_SIZE; c++) {
      expect(grid[15][c]).toBe(1);
    }
  });
});

describe("gridRows", () => {
  it("emits 30 strings of 30 binary characters", () => {
    const rows = gridRows(rasterize([[{ x: 15, y: 15 }]]));
    expect(rows.length).toBe(GRID_SIZE);
    for (const row of rows) {
      expect(row).toMatch(/^[01]{30}$/);
    }
    expect(rows[1][1]).toBe("1");
  });
});

describe("canvas state", () => {
  it("starts empty with no label", () => {
    const state = emptyState();
    expect(hasInk(state)).toBe(false);
    expect(state.currentLabel).toBeNull();
  });

  it("has ink once a stroke has a point", () => {
    const state = emptyState();
    state.strokes.push([{ x: 1, y: 1 }]);
    expect(hasInk(state)).toBe(true);
  });
});
