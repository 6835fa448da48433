/** Pointer-trace capture for attention prompts.
 *
 * The prompt animates a target along a piecewise-linear path; the user
 * follows it with the pointer. The recorder itself guarantees the wire
 * invariants (times non-decreasing, clamped to [0, duration]); the caller
 * ticks `recordHeld` on an interval so the sample rate stays above the
 * oracle's floor even while the pointer rests.
 */

export type Waypoint = [number, number, number]; // [t_ms, x, y], x/y in [0, 1]

export interface AttentionPrompt {
  path: Waypoint[];
  duration_ms: number;
  tolerance: number;
  coverage: number;
}

/** Target position at `t` ms, clamped to the path's time range. */
export function targetAt(
  path: Waypoint[],
  t: number,
): { x: number; y: number } {
  const first = path[0]!;
  const last = path[path.length - 1]!;
  if (t <= first[0]) return { x: first[1], y: first[2] };
  if (t >= last[0]) return { x: last[1], y: last[2] };
  for (let i = 0; i + 1 < path.length; i++) {
    const [t0, x0, y0] = path[i]!;
    const [t1, x1, y1] = path[i + 1]!;
    if (t <= t1) {
      const frac = (t - t0) / (t1 - t0);
      return { x: x0 + frac * (x1 - x0), y: y0 + frac * (y1 - y0) };
    }
  }
  return { x: last[1], y: last[2] };
}

export class TraceRecorder {
  private startedAt: number | null = null;
  private samples: Waypoint[] = [];
  private lastPos: { x: number; y: number } | null = null;

  constructor(readonly durationMs: number) {}

  start(clientNow: number): void {
    this.startedAt = clientNow;
    this.samples = [];
  }

  get started(): boolean {
    return this.startedAt !== null;
  }

  get sampleCount(): number {
    return this.samples.length;
  }

  /** Record the pointer at (x, y); returns false if outside the run. */
  record(clientNow: number, x: number, y: number): boolean {
    if (this.startedAt === null) return false;
    const t = clientNow - this.startedAt;
    if (t < 0 || t > this.durationMs) return false;
    const previous = this.samples[this.samples.length - 1];
    if (previous && t < previous[0]) return false;
    this.samples.push([t, x, y]);
    this.lastPos = { x, y };
    return true;
  }

  /** Re-record the last known position (interval tick while pointer rests). */
  recordHeld(clientNow: number): boolean {
    if (!this.lastPos) return false;
    return this.record(clientNow, this.lastPos.x, this.lastPos.y);
  }

  isComplete(clientNow: number): boolean {
    return this.startedAt !== null && clientNow - this.startedAt >= this.durationMs;
  }

  /** Average samples per second over the run's duration. */
  sampleRateHz(): number {
    return this.samples.length / (this.durationMs / 1000);
  }

  toAnswer(): { samples: Waypoint[] } {
    return { samples: this.samples.slice() };
  }
}
