import { describe, expect, it } from "vitest";

import { ApiError, OracleClient } from "../src/api.js";

interface Recorded {
  url: string;
  method: string;
  body: unknown;
}

function stubClient(status: number, payload: unknown) {
  const calls: Recorded[] = [];
  const client = new OracleClient("http://oracle.test", async (url, init) => {
    calls.push({
      url,
      method: init?.method ?? "GET",
      body: init?.body ? JSON.parse(init.body as string) : undefined,
    });
    return new Response(JSON.stringify(payload), {
      status,
      headers: { "Content-Type": "application/json" },
    });
  });
  return { client, calls };
}

describe("OracleClient", () => {
  it("GETs health", async () => {
    const { client, calls } = stubClient(200, { status: "ok", backend: "pure" });
    const health = await client.health();
    expect(health.status).toBe("ok");
    expect(calls[0]).toMatchObject({
      url: "http://oracle.test/v1/health",
      method: "GET",
    });
  });

  it("unwraps the families list", async () => {
    const { client } = stubClient(200, {
      families: [{ family: "reasoning", deadline_ms: 30000, difficulty: 1, has_generator: true }],
    });
    const families = await client.families();
    expect(families).toHaveLength(1);
    expect(families[0]!.family).toBe("reasoning");
  });

  it("POSTs a challenge request with id and family", async () => {
    const { client, calls } = stubClient(200, { family: "perceptual" });
    await client.requestChallenge("alice", "perceptual");
    expect(calls[0]).toMatchObject({
      url: "http://oracle.test/v1/challenge",
      method: "POST",
      body: { id: "alice", family: "perceptual" },
    });
  });

  it("POSTs answers echoing the challenge binding", async () => {
    const { client, calls } = stubClient(200, { verdict: "accepted", window: 7 });
    const result = await client.submitAnswer(
      { id: "alice", window: 7, index: 2, tag: "ab".repeat(32) },
      3,
    );
    expect(result.verdict).toBe("accepted");
    expect(calls[0]!.body).toEqual({
      id: "alice",
      window: 7,
      index: 2,
      answer: 3,
      tag: "ab".repeat(32),
    });
  });

  it("percent-encodes identities in the status path", async () => {
    const { client, calls } = stubClient(200, { active: false });
    await client.identityStatus("hex:00ff");
    expect(calls[0]!.url).toBe(
      "http://oracle.test/v1/identity/hex%3A00ff/status",
    );
  });

  it("maps error bodies onto ApiError", async () => {
    const { client } = stubClient(429, {
      error: "rate_limited",
      detail: "issuance cap 10 reached",
    });
    const failure = client.requestChallenge("alice", "perceptual");
    await expect(failure).rejects.toBeInstanceOf(ApiError);
    await expect(failure).rejects.toMatchObject({
      status: 429,
      code: "rate_limited",
    });
  });
});
