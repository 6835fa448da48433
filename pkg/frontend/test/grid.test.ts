import { describe, expect, it } from "vitest";

import { paintGrid, parseGrid, parsePerceptual } from "../src/grid.js";

describe("parseGrid", () => {
  it("parses rows of 0/1 characters", () => {
    expect(parseGrid(["01", "10"])).toEqual([
      [false, true],
      [true, false],
    ]);
  });

  it("rejects ragged rows", () => {
    expect(() => parseGrid(["01", "1"])).toThrow(/ragged/);
  });

  it("rejects non-binary cells", () => {
    expect(() => parseGrid(["0x"])).toThrow(/bad cell/);
  });

  it("rejects an empty grid", () => {
    expect(() => parseGrid([])).toThrow(/empty/);
  });
});

describe("parsePerceptual", () => {
  it("parses the base grid and every candidate", () => {
    const prompt = {
      family: "perceptual",
      grid: ["01", "10"],
      candidates: [
        ["00", "10"],
        ["11", "10"],
      ],
    };
    const { base, candidates } = parsePerceptual(prompt);
    expect(base[0]).toEqual([false, true]);
    expect(candidates).toHaveLength(2);
    expect(candidates[1]![0]).toEqual([true, true]);
  });

  it("rejects prompts without grids", () => {
    expect(() => parsePerceptual({ family: "perceptual" })).toThrow(
      /malformed/,
    );
  });
});

describe("paintGrid", () => {
  it("visits every cell once with its value", () => {
    const calls: [number, number, boolean][] = [];
    paintGrid(parseGrid(["01", "11"]), {
      fillCell: (r, c, on) => calls.push([r, c, on]),
    });
    expect(calls).toEqual([
      [0, 0, false],
      [0, 1, true],
      [1, 0, true],
      [1, 1, true],
    ]);
  });
});
