/** End-to-end test against a real oracle process over HTTP.
 *
 * Challenge solvers live HERE, in the test, on purpose: the client code
 * under src/ only renders prompts and forwards what a human did.
 */

import { ChildProcess, spawn } from "node:child_process";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiError, OracleClient, WireChallenge } from "../src/api.js";
import { targetAt, Waypoint } from "../src/trace.js";

const repoRoot = join(dirname(fileURLToPath(import.meta.url)), "..", "..");
const SECRET = "42".repeat(32);

let server: ChildProcess;
let client: OracleClient;

function startOracle(): Promise<string> {
  return new Promise((resolve, reject) => {
    server = spawn(
      "python3",
      ["-m", "hco.cli", "serve", "--host", "127.0.0.1", "--port", "0"],
      {
        cwd: repoRoot,
        env: { ...process.env, HCO_ORACLE_SECRET: SECRET },
        stdio: ["ignore", "pipe", "pipe"],
      },
    );
    let out = "";
    const timer = setTimeout(
      () => reject(new Error(`oracle did not start: ${out}`)),
      15_000,
    );
    server.stdout!.on("data", (chunk: Buffer) => {
      out += chunk.toString();
      const match = out.match(/http:\/\/127\.0\.0\.1:(\d+)/);
      if (match) {
        clearTimeout(timer);
        resolve(`http://127.0.0.1:${match[1]}`);
      }
    });
    server.stderr!.on("data", (chunk: Buffer) => {
      out += chunk.toString();
    });
    server.on("exit", (code) =>
      reject(new Error(`oracle exited early (${code}): ${out}`)),
    );
  });
}

beforeAll(async () => {
  client = new OracleClient(await startOracle());
});

afterAll(() => {
  server?.kill();
});

// --- test-only solvers ----------------------------------------------------

function solvePerceptual(challenge: WireChallenge): number {
  const base = challenge.prompt.grid as string[];
  const candidates = challenge.prompt.candidates as string[][];
  const distance = (rows: string[]) =>
    rows.reduce(
      (sum, row, r) =>
        sum +
        Array.from(row).filter((ch, c) => ch !== base[r]![c]).length,
      0,
    );
  let best = 0;
  candidates.forEach((rows, i) => {
    if (distance(rows) < distance(candidates[best]!)) best = i;
  });
  return best;
}

function solveReasoning(challenge: WireChallenge): number | boolean {
  const steps = challenge.prompt.steps as [string, number][];
  const question = challenge.prompt.question as {
    kind: string;
    threshold?: number;
  };
  let value = 0;
  for (const [op, n] of steps) {
    if (op === "start") value = n;
    else if (op === "add") value += n;
    else if (op === "sub") value -= n;
    else if (op === "mul") value *= n;
    else throw new Error(`unknown op ${op}`);
  }
  if (question.kind === "value") return value;
  if (question.kind === "gt") return value > question.threshold!;
  return value < question.threshold!;
}

function solveAttention(challenge: WireChallenge): {
  samples: [number, number, number][];
} {
  const path = challenge.prompt.path as Waypoint[];
  const duration = challenge.prompt.duration_ms as number;
  const samples: [number, number, number][] = [];
  for (let t = 0; t <= duration; t += 40) {
    const { x, y } = targetAt(path, t);
    samples.push([t, x, y]);
  }
  return { samples };
}

// --- the tests -------------------------------------------------------------

describe("oracle service over HTTP", () => {
  it("reports health and window configuration", async () => {
    const health = await client.health();
    expect(health.status).toBe("ok");
    expect(health.window_ms).toBe(60_000);
    expect(health.window).toBeGreaterThan(0);
  });

  it("lists families; only generator-backed ones are playable", async () => {
    const families = await client.families();
    const byId = new Map(families.map((f) => [f.family, f]));
    expect(byId.get("perceptual")!.has_generator).toBe(true);
    expect(byId.get("reasoning")!.has_generator).toBe(true);
    expect(byId.get("attention")!.has_generator).toBe(true);
    expect(byId.get("biometric")!.has_generator).toBe(false);
  });

  it("rejects unknown families with a typed error", async () => {
    const failure = client.requestChallenge("nobody", "telepathy");
    await expect(failure).rejects.toMatchObject({
      status: 404,
      code: "unknown_family",
    });
  });

  it("accepts a correct perceptual answer and flags the identity active", async () => {
    const challenge = await client.requestChallenge("int-alice", "perceptual");
    expect(challenge.deadline_ms).toBe(20_000);
    expect(challenge.tag).toMatch(/^[0-9a-f]{64}$/);

    const verdict = await client.submitAnswer(challenge, solvePerceptual(challenge));
    expect(verdict.verdict).toBe("accepted");

    const status = await client.identityStatus("int-alice");
    expect(status.active).toBe(true);
    expect(status.solved_count).toBeGreaterThanOrEqual(1);
  });

  it("lets a wrong answer retry, then rejects the replay after acceptance", async () => {
    const challenge = await client.requestChallenge("int-bob", "perceptual");
    const correct = solvePerceptual(challenge);

    const wrong = await client.submitAnswer(challenge, (correct + 1) % 6);
    expect(wrong.verdict).toBe("rejected_wrong_answer");

    const retry = await client.submitAnswer(challenge, correct);
    expect(retry.verdict).toBe("accepted");

    const replay = await client.submitAnswer(challenge, correct);
    expect(replay.verdict).toBe("rejected_replay");
  });

  it("rejects a forged binding tag", async () => {
    const challenge = await client.requestChallenge("int-carol", "reasoning");
    const forged = { ...challenge, tag: "0".repeat(64) };
    const verdict = await client.submitAnswer(forged, solveReasoning(challenge));
    expect(verdict.verdict).toBe("rejected_bad_binding");
  });

  it("accepts a correct reasoning answer", async () => {
    const challenge = await client.requestChallenge("int-dave", "reasoning");
    const verdict = await client.submitAnswer(challenge, solveReasoning(challenge));
    expect(verdict.verdict).toBe("accepted");
  });

  it("accepts an attention trace that follows the target", async () => {
    const challenge = await client.requestChallenge("int-erin", "attention");
    expect(challenge.prompt.duration_ms).toBe(5_000);
    const verdict = await client.submitAnswer(challenge, solveAttention(challenge));
    expect(verdict.verdict).toBe("accepted");
  });

  it("rejects an attention trace that ignores the target", async () => {
    const challenge = await client.requestChallenge("int-erin", "attention");
    const lazy = solveAttention(challenge);
    const verdict = await client.submitAnswer(challenge, {
      samples: lazy.samples.map(([t]) => [t, 0.0, 0.0] as [number, number, number]),
    });
    expect(verdict.verdict).toBe("rejected_wrong_answer");
  });

  it("enforces the per-window issuance cap", async () => {
    const windows = new Set<number>();
    let limited: ApiError | null = null;
    for (let i = 0; i < 11; i++) {
      try {
        const ch = await client.requestChallenge("int-flood", "reasoning");
        windows.add(ch.window);
      } catch (err) {
        limited = err as ApiError;
        break;
      }
    }
    // A window boundary mid-loop legitimately resets the cap; otherwise the
    // 11th request must be rate-limited.
    if (windows.size === 1) {
      expect(limited).toBeInstanceOf(ApiError);
      expect(limited!.code).toBe("rate_limited");
      expect(limited!.status).toBe(429);
    }
  });
});
