/** Parsing and painting of perceptual grid prompts.
 *
 * Painting goes through the minimal `CellPainter` interface so the logic is
 * testable without a real canvas; `main.ts` adapts it to 2D contexts.
 */

export type Grid = boolean[][];

export interface PerceptualPrompt {
  grid: string[];
  candidates: string[][];
}

/** Parse one grid given as equal-length rows of '0'/'1' characters. */
export function parseGrid(rows: string[]): Grid {
  if (rows.length === 0) throw new Error("empty grid");
  const size = rows[0]!.length;
  return rows.map((row) => {
    if (row.length !== size) throw new Error("ragged grid rows");
    return Array.from(row, (ch) => {
      if (ch !== "0" && ch !== "1") throw new Error(`bad cell '${ch}'`);
      return ch === "1";
    });
  });
}

export function parsePerceptual(prompt: Record<string, unknown>): {
  base: Grid;
  candidates: Grid[];
} {
  const p = prompt as unknown as PerceptualPrompt;
  if (!Array.isArray(p.grid) || !Array.isArray(p.candidates)) {
    throw new Error("malformed perceptual prompt");
  }
  return {
    base: parseGrid(p.grid),
    candidates: p.candidates.map(parseGrid),
  };
}

export interface CellPainter {
  fillCell(row: number, col: number, on: boolean): void;
}

export function paintGrid(grid: Grid, painter: CellPainter): void {
  grid.forEach((row, r) => row.forEach((on, c) => painter.fillCell(r, c, on)));
}
