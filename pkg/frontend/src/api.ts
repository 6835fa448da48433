/** Typed client for the oracle's HTTP endpoints. */

export interface WireChallenge {
  id: string;
  family: string;
  window: number;
  index: number;
  prompt: Record<string, unknown>;
  prompt_digest: string;
  issued_at: number;
  deadline_ms: number;
  nonce: string;
  tag: string;
}

export interface VerdictResponse {
  verdict: string;
  window: number;
}

export interface IdentityStatus {
  id: string;
  window: number;
  active: boolean;
  solved_count: number;
  issued_count: number;
  issuance_cap: number;
}

export interface FamilyInfo {
  family: string;
  deadline_ms: number;
  difficulty: number;
  has_generator: boolean;
}

export interface Health {
  status: string;
  backend: string;
  now: number;
  window: number;
  window_ms: number;
  epoch_ms: number;
  log_seq: number | null;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    readonly detail: string,
  ) {
    super(`${code} (${status}): ${detail}`);
    this.name = "ApiError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class OracleClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, init);
    const body = (await response.json()) as Record<string, unknown>;
    if (!response.ok) {
      throw new ApiError(
        response.status,
        typeof body.error === "string" ? body.error : "unknown_error",
        typeof body.detail === "string" ? body.detail : "",
      );
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  health(): Promise<Health> {
    return this.request<Health>("/v1/health");
  }

  async families(): Promise<FamilyInfo[]> {
    const body = await this.request<{ families: FamilyInfo[] }>("/v1/families");
    return body.families;
  }

  requestChallenge(id: string, family: string): Promise<WireChallenge> {
    return this.post<WireChallenge>("/v1/challenge", { id, family });
  }

  submitAnswer(
    challenge: Pick<WireChallenge, "id" | "window" | "index" | "tag">,
    answer: unknown,
  ): Promise<VerdictResponse> {
    return this.post<VerdictResponse>("/v1/response", {
      id: challenge.id,
      window: challenge.window,
      index: challenge.index,
      answer,
      tag: challenge.tag,
    });
  }

  identityStatus(id: string): Promise<IdentityStatus> {
    return this.request<IdentityStatus>(
      `/v1/identity/${encodeURIComponent(id)}/status`,
    );
  }
}
