/** Server-clock offset estimation and deadline countdown math.
 *
 * The server's receipt time is authoritative, so the client renders the
 * countdown in *server* time: it estimates `offset = serverNow - clientNow`
 * from a timestamped response and the local send/receive instants.
 */

/** Offset estimate assuming the server read its clock mid-flight. */
export function estimateOffset(
  serverNow: number,
  requestStartedAt: number,
  responseReceivedAt: number,
): number {
  return serverNow - (requestStartedAt + responseReceivedAt) / 2;
}

/** Absolute server-time instant at which a challenge stops being accepted. */
export function deadlineAt(challenge: {
  issued_at: number;
  deadline_ms: number;
}): number {
  return challenge.issued_at + challenge.deadline_ms;
}

/** Milliseconds left before `deadline` (server time), floored at zero. */
export function remainingMs(
  deadline: number,
  offsetMs: number,
  clientNow: number,
): number {
  return Math.max(0, deadline - (clientNow + offsetMs));
}

/** "12.3s" style countdown text. */
export function formatCountdown(ms: number): string {
  return `${(Math.max(0, ms) / 1000).toFixed(1)}s`;
}
