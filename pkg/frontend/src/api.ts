/** Typed client for the gambling session service. */

export type Role = "alice" | "bob";
export type Detector = "D1" | "D2" | "D3";

export interface SessionInfo {
  session_id: string;
  R: number;
  bet: number;
  human_role: string;
  opponent_policy: string;
  noise_e: number;
  seed: number;
  next_commitment: string;
}

export interface CheatStatus {
  available: boolean;
  reason?: string;
  d3_count?: number;
  rounds_observed?: number;
  expected_noise_rate?: number;
  p_value?: number;
  significance?: number;
  flagged?: boolean;
}

export interface RoundResult {
  round_index: number;
  detector: Detector;
  payoff: number;
  bankroll: number;
  machine_parameters: Record<string, number>;
  commitment: string;
  commitment_nonce: string;
  next_commitment: string;
  cheat: CheatStatus | null;
}

export interface SessionSummary {
  session_id: string;
  status: "open" | "closed";
  R: number;
  bet: number;
  human_role: string;
  opponent_policy: string;
  noise_e: number;
  seed: number;
  rounds_played: number;
  bankroll: number;
  next_commitment: string | null;
  cheat: CheatStatus | null;
}

export interface LedgerRow {
  index: number;
  epsilon: number;
  eta: number;
  detector: Detector;
  payoff: number;
  bankroll: number;
  commitment: string;
  commitment_nonce: string;
}

export interface SweepData {
  kind: string;
  grid: number;
  R: number | null;
  epsilon: number[];
  eta: number[];
  p1: number[][];
  p2: number[][];
  p3: number[][];
  gain?: number[][];
}

export interface EquilibriumInfo {
  R: number;
  eta_tilde: number;
  guaranteed_gain: number;
  alice_best_epsilon: number;
  tolerance: number;
}

export class ApiError extends Error {
  constructor(public status: number, public detail: string) {
    super(`HTTP ${status}: ${detail}`);
  }
}

export type FetchLike = (
  input: string,
  init?: RequestInit,
) => Promise<Response>;

export class GambleApi {
  constructor(
    public baseUrl: string,
    private fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    const body = await response.json().catch(() => ({}));
    if (!response.ok) {
      const detail =
        typeof body.detail === "string"
          ? body.detail
          : JSON.stringify(body.detail ?? body);
      throw new ApiError(response.status, detail);
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

  createSession(options: {
    R: number;
    human_role: string;
    opponent_policy: string;
    noise_e?: number;
    seed?: number;
  }): Promise<SessionInfo> {
    return this.post<SessionInfo>("/sessions", options);
  }

  playRound(
    sessionId: string,
    body: { epsilon?: number; eta?: number; bet: boolean },
  ): Promise<RoundResult> {
    return this.post<RoundResult>(`/sessions/${sessionId}/rounds`, body);
  }

  getSession(sessionId: string): Promise<SessionSummary> {
    return this.request<SessionSummary>(`/sessions/${sessionId}`);
  }

  getLedger(sessionId: string): Promise<{ rounds: LedgerRow[] }> {
    return this.request(`/sessions/${sessionId}/ledger`);
  }

  closeSession(sessionId: string): Promise<{ status: string }> {
    return this.post(`/sessions/${sessionId}/close`, {});
  }

  getSweep(kind: "dist" | "gain", grid: number, R?: number): Promise<SweepData> {
    const params = new URLSearchParams({ kind, grid: String(grid) });
    if (R !== undefined) params.set("R", String(R));
    return this.request<SweepData>(`/analysis/sweep?${params}`);
  }

  getEquilibrium(R: number): Promise<EquilibriumInfo> {
    return this.request<EquilibriumInfo>(`/analysis/equilibrium?R=${R}`);
  }

  getDistribution(epsilon: number, eta: number) {
    return this.request<{ p1: number; p2: number; p3: number }>(
      `/analysis/distribution?epsilon=${epsilon}&eta=${eta}`,
    );
  }
}
