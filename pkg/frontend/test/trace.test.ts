import { describe, expect, it } from "vitest";

import { TraceRecorder, targetAt, Waypoint } from "../src/trace.js";

const path: Waypoint[] = [
  [0, 0.0, 0.0],
  [1000, 1.0, 0.0],
  [2000, 1.0, 1.0],
];

describe("targetAt", () => {
  it("hits the waypoints exactly", () => {
    expect(targetAt(path, 0)).toEqual({ x: 0, y: 0 });
    expect(targetAt(path, 1000)).toEqual({ x: 1, y: 0 });
    expect(targetAt(path, 2000)).toEqual({ x: 1, y: 1 });
  });

  it("interpolates linearly inside segments", () => {
    expect(targetAt(path, 500)).toEqual({ x: 0.5, y: 0 });
    expect(targetAt(path, 1750)).toEqual({ x: 1, y: 0.75 });
  });

  it("clamps outside the time range", () => {
    expect(targetAt(path, -50)).toEqual({ x: 0, y: 0 });
    expect(targetAt(path, 9000)).toEqual({ x: 1, y: 1 });
  });
});

describe("TraceRecorder", () => {
  it("ignores samples before start and outside the run window", () => {
    const rec = new TraceRecorder(2000);
    expect(rec.record(100, 0.5, 0.5)).toBe(false);
    rec.start(1000);
    expect(rec.record(999, 0.5, 0.5)).toBe(false); // before start
    expect(rec.record(1000, 0.1, 0.2)).toBe(true); // t = 0
    expect(rec.record(3000, 0.9, 0.9)).toBe(true); // t = duration
    expect(rec.record(3001, 0.9, 0.9)).toBe(false); // past the end
    expect(rec.sampleCount).toBe(2);
  });

  it("stores times relative to start and keeps them non-decreasing", () => {
    const rec = new TraceRecorder(5000);
    rec.start(10_000);
    rec.record(10_040, 0.1, 0.1);
    rec.record(10_080, 0.2, 0.2);
    expect(rec.toAnswer().samples).toEqual([
      [40, 0.1, 0.1],
      [80, 0.2, 0.2],
    ]);
  });

  it("re-records the held position on ticks", () => {
    const rec = new TraceRecorder(1000);
    rec.start(0);
    expect(rec.recordHeld(10)).toBe(false); // nothing seen yet
    rec.record(20, 0.3, 0.4);
    expect(rec.recordHeld(60)).toBe(true);
    expect(rec.toAnswer().samples).toEqual([
      [20, 0.3, 0.4],
      [60, 0.3, 0.4],
    ]);
  });

  it("reports completion and the achieved sample rate", () => {
    const rec = new TraceRecorder(1000);
    rec.start(0);
    for (let t = 0; t <= 1000; t += 40) rec.record(t, 0.5, 0.5);
    expect(rec.isComplete(999)).toBe(false);
    expect(rec.isComplete(1000)).toBe(true);
    expect(rec.sampleRateHz()).toBeGreaterThanOrEqual(20);
  });

  it("restarting clears previous samples", () => {
    const rec = new TraceRecorder(1000);
    rec.start(0);
    rec.record(10, 0.1, 0.1);
    rec.start(5000);
    expect(rec.sampleCount).toBe(0);
  });
});
