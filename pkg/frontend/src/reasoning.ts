/** Rendering and answer parsing for reasoning prompts.
 *
 * The client only *describes* the problem and parses what the user typed;
 * it never evaluates the arithmetic itself.
 */

export interface ReasoningPrompt {
  steps: [string, number][];
  question: { kind: string; threshold?: number };
}

const STEP_WORDING: Record<string, (n: number) => string> = {
  start: (n) => `Start with ${n}.`,
  add: (n) => `Add ${n}.`,
  sub: (n) => `Subtract ${n}.`,
  mul: (n) => `Multiply by ${n}.`,
};

export function describeProblem(prompt: Record<string, unknown>): string {
  const p = prompt as unknown as ReasoningPrompt;
  const sentences = p.steps.map(([op, n]) => {
    const wording = STEP_WORDING[op];
    if (!wording) throw new Error(`unknown step '${op}'`);
    return wording(n);
  });
  const q = p.question;
  if (q.kind === "value") {
    sentences.push("What is the final value?");
  } else if (q.kind === "gt" || q.kind === "lt") {
    const relation = q.kind === "gt" ? "greater" : "less";
    sentences.push(`Is the final value ${relation} than ${q.threshold}?`);
  } else {
    throw new Error(`unknown question '${q.kind}'`);
  }
  return sentences.join(" ");
}

/** True when the expected answer is yes/no rather than a number. */
export function isYesNo(prompt: Record<string, unknown>): boolean {
  const kind = (prompt as unknown as ReasoningPrompt).question.kind;
  return kind === "gt" || kind === "lt";
}

/** Convert the user's text into the wire answer for this prompt. */
export function parseAnswer(
  prompt: Record<string, unknown>,
  text: string,
): number | boolean {
  const trimmed = text.trim().toLowerCase();
  if (isYesNo(prompt)) {
    if (["yes", "y", "true"].includes(trimmed)) return true;
    if (["no", "n", "false"].includes(trimmed)) return false;
    throw new Error("answer yes or no");
  }
  if (!/^-?\d+$/.test(trimmed)) throw new Error("answer must be an integer");
  return Number.parseInt(trimmed, 10);
}
