/** DOM wiring: request challenges, render prompts, submit answers.
 *
 * Everything answer-shaped comes from the human: a tile click, typed text,
 * or a pointer trace. The client never computes answers from prompt data.
 */

import { ApiError, OracleClient, WireChallenge } from "./api.js";
import {
  deadlineAt,
  estimateOffset,
  formatCountdown,
  remainingMs,
} from "./clock.js";
import { Grid, paintGrid, parsePerceptual } from "./grid.js";
import { describeProblem, isYesNo, parseAnswer } from "./reasoning.js";
import { AttentionPrompt, TraceRecorder, targetAt } from "./trace.js";

const client = new OracleClient("");

const el = {
  backend: document.getElementById("backend") as HTMLSpanElement,
  identity: document.getElementById("identity") as HTMLInputElement,
  family: document.getElementById("family") as HTMLSelectElement,
  request: document.getElementById("request") as HTMLButtonElement,
  countdown: document.getElementById("countdown") as HTMLSpanElement,
  prompt: document.getElementById("prompt") as HTMLDivElement,
  verdict: document.getElementById("verdict") as HTMLDivElement,
  status: document.getElementById("status") as HTMLDivElement,
};

let current: WireChallenge | null = null;
let clockOffsetMs = 0;
let countdownTimer: number | undefined;
let attentionTimers: number[] = [];

function setVerdict(text: string, good: boolean | null): void {
  el.verdict.textContent = text;
  el.verdict.className = good === null ? "" : good ? "good" : "bad";
}

function clearAttentionTimers(): void {
  attentionTimers.forEach((t) => window.clearInterval(t));
  attentionTimers = [];
}

function startCountdown(challenge: WireChallenge): void {
  if (countdownTimer !== undefined) window.clearInterval(countdownTimer);
  const deadline = deadlineAt(challenge);
  const tick = () => {
    const left = remainingMs(deadline, clockOffsetMs, Date.now());
    el.countdown.textContent = formatCountdown(left);
    el.countdown.className = left === 0 ? "bad" : left < 5000 ? "warn" : "";
    if (left === 0 && countdownTimer !== undefined) {
      window.clearInterval(countdownTimer);
    }
  };
  tick();
  countdownTimer = window.setInterval(tick, 100);
}

async function submit(answer: unknown): Promise<void> {
  if (!current) return;
  const challenge = current;
  current = null;
  try {
    const result = await client.submitAnswer(challenge, answer);
    setVerdict(`verdict: ${result.verdict}`, result.verdict === "accepted");
    if (result.verdict === "rejected_wrong_answer") {
      current = challenge; // a wrong answer does not consume the challenge
    }
  } catch (err) {
    setVerdict(err instanceof ApiError ? err.message : String(err), false);
  }
  await refreshStatus();
}

function canvasPainter(
  canvas: HTMLCanvasElement,
  size: number,
): { fillCell(row: number, col: number, on: boolean): void } {
  const ctx = canvas.getContext("2d")!;
  const cell = canvas.width / size;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  return {
    fillCell(row, col, on) {
      ctx.fillStyle = on ? "#222" : "#f4f4f4";
      ctx.fillRect(col * cell, row * cell, cell - 0.5, cell - 0.5);
    },
  };
}

function renderGridCanvas(grid: Grid, pixels: number): HTMLCanvasElement {
  const canvas = document.createElement("canvas");
  canvas.width = pixels;
  canvas.height = pixels;
  paintGrid(grid, canvasPainter(canvas, grid.length));
  return canvas;
}

function renderPerceptual(challenge: WireChallenge): void {
  const { base, candidates } = parsePerceptual(challenge.prompt);
  const intro = document.createElement("p");
  intro.textContent =
    "Click the candidate that looks closest to the reference grid.";
  el.prompt.append(intro);

  const reference = document.createElement("div");
  reference.className = "reference";
  reference.append("reference:", renderGridCanvas(base, 128));
  el.prompt.append(reference);

  const row = document.createElement("div");
  row.className = "candidates";
  candidates.forEach((grid, index) => {
    const button = document.createElement("button");
    button.className = "tile";
    button.title = `candidate ${index}`;
    button.append(renderGridCanvas(grid, 96));
    button.addEventListener("click", () => void submit(index));
    row.append(button);
  });
  el.prompt.append(row);
}

function renderReasoning(challenge: WireChallenge): void {
  const text = document.createElement("p");
  text.textContent = describeProblem(challenge.prompt);
  const input = document.createElement("input");
  input.placeholder = isYesNo(challenge.prompt) ? "yes / no" : "integer";
  const button = document.createElement("button");
  button.textContent = "Submit";
  const send = () => {
    try {
      void submit(parseAnswer(challenge.prompt, input.value));
    } catch (err) {
      setVerdict(String(err instanceof Error ? err.message : err), false);
    }
  };
  button.addEventListener("click", send);
  input.addEventListener("keydown", (e) => {
    if (e.key === "Enter") send();
  });
  el.prompt.append(text, input, button);
  input.focus();
}

function renderAttention(challenge: WireChallenge): void {
  const prompt = challenge.prompt as unknown as AttentionPrompt;
  const recorder = new TraceRecorder(prompt.duration_ms);
  const text = document.createElement("p");
  text.textContent =
    `Press start, then keep your pointer on the moving dot for ` +
    `${(prompt.duration_ms / 1000).toFixed(0)} seconds.`;
  const canvas = document.createElement("canvas");
  canvas.width = 360;
  canvas.height = 360;
  canvas.className = "arena";
  const start = document.createElement("button");
  start.textContent = "Start";
  el.prompt.append(text, start, canvas);

  const ctx = canvas.getContext("2d")!;
  const draw = (t: number) => {
    ctx.clearRect(0, 0, canvas.width, canvas.height);
    const { x, y } = targetAt(prompt.path, t);
    ctx.beginPath();
    ctx.arc(x * canvas.width, y * canvas.height, 10, 0, 2 * Math.PI);
    ctx.fillStyle = "#c33";
    ctx.fill();
  };
  draw(0);

  canvas.addEventListener("pointermove", (event) => {
    const rect = canvas.getBoundingClientRect();
    recorder.record(
      performance.now(),
      (event.clientX - rect.left) / rect.width,
      (event.clientY - rect.top) / rect.height,
    );
  });

  start.addEventListener("click", () => {
    start.disabled = true;
    recorder.start(performance.now());
    // Re-record the resting pointer at 25 Hz so the trace stays above the
    // oracle's minimum sample rate even when no pointer events fire.
    attentionTimers.push(
      window.setInterval(() => recorder.recordHeld(performance.now()), 40),
    );
    const startedAt = performance.now();
    const loop = () => {
      const t = performance.now() - startedAt;
      if (t >= prompt.duration_ms) {
        clearAttentionTimers();
        draw(prompt.duration_ms);
        void submit(recorder.toAnswer());
        return;
      }
      draw(t);
      requestAnimationFrame(loop);
    };
    requestAnimationFrame(loop);
  });
}

async function refreshStatus(): Promise<void> {
  const id = el.identity.value.trim();
  if (!id) return;
  try {
    const status = await client.identityStatus(id);
    el.status.textContent =
      `window ${status.window}: ` +
      `${status.active ? "ACTIVE" : "inactive"}, ` +
      `${status.solved_count} solved, ` +
      `${status.issued_count}/${status.issuance_cap} issued`;
  } catch {
    el.status.textContent = "";
  }
}

async function requestChallenge(): Promise<void> {
  const id = el.identity.value.trim();
  if (!id) {
    setVerdict("enter an identity first", false);
    return;
  }
  clearAttentionTimers();
  el.prompt.replaceChildren();
  setVerdict("", null);
  const sentAt = Date.now();
  try {
    const challenge = await client.requestChallenge(id, el.family.value);
    clockOffsetMs = estimateOffset(challenge.issued_at, sentAt, Date.now());
    current = challenge;
    startCountdown(challenge);
    switch (challenge.family) {
      case "perceptual":
        renderPerceptual(challenge);
        break;
      case "reasoning":
        renderReasoning(challenge);
        break;
      case "attention":
        renderAttention(challenge);
        break;
      default:
        setVerdict(`no renderer for family '${challenge.family}'`, false);
    }
  } catch (err) {
    setVerdict(err instanceof ApiError ? err.message : String(err), false);
  }
  await refreshStatus();
}

async function init(): Promise<void> {
  try {
    const health = await client.health();
    el.backend.textContent = `oracle ok (${health.backend} kernels, window ${health.window_ms / 1000}s)`;
  } catch {
    el.backend.textContent = "oracle unreachable";
  }
  try {
    const families = await client.families();
    for (const info of families.filter((f) => f.has_generator)) {
      const option = document.createElement("option");
      option.value = info.family;
      option.textContent = `${info.family} (${info.deadline_ms / 1000}s)`;
      el.family.append(option);
    }
  } catch {
    // leave the select empty; requesting will surface the error
  }
  el.request.addEventListener("click", () => void requestChallenge());
  el.identity.addEventListener("change", () => void refreshStatus());
}

void init();
