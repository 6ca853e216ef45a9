/** State machine behind the gambling table.
 *
 * Owns the session, round history, bankroll series, cheat indicator and
 * heatmap cache.  Every number displayed comes from the service; the
 * model only clamps control input and keeps the view in sync.
 */

import {
  ApiError,
  GambleApi,
  type CheatStatus,
  type Detector,
  type Role,
  type SessionInfo,
} from "./api.js";
import { clampParameter, PARAMETER_DOMAINS, validatePunishment } from "./domain.js";
import { HeatmapCache } from "./heatmap.js";

export interface StartOptions {
  R: number;
  role: Role;
  opponentPolicy: string;
  noiseE?: number;
  seed?: number;
  heatmapGrid?: number;
}

export interface RoundRecord {
  index: number;
  parameterPlayed: number;
  detector: Detector;
  payoff: number;
  bankroll: number;
  machineParameters: Record<string, number>;
  commitment: string;
  commitmentNonce: string;
}

export type TableStatus = "idle" | "open" | "closed";

export class TableViewModel {
  session: SessionInfo | null = null;
  role: Role = "alice";
  status: TableStatus = "idle";
  history: RoundRecord[] = [];
  bankrollSeries: number[] = [];
  cheat: CheatStatus | null = null;
  heatmap: HeatmapCache | null = null;
  suggestedEta: number | null = null;
  sliderValue = 0;
  /** "casino realism" toggle: hide the revealed machine parameter */
  revealMachineParameter = true;
  busy = false;
  lastError: string | null = null;
  lastDetector: Detector | null = null;

  constructor(private api: GambleApi) {}

  get domain() {
    return PARAMETER_DOMAINS[this.role];
  }

  /** Create the session and load the heatmap; false when blocked. */
  async start(options: StartOptions): Promise<boolean> {
    const invalid = validatePunishment(options.R);
    if (invalid) {
      // client-side validation: no request leaves the table
      this.lastError = invalid;
      return false;
    }
    this.role = options.role;
    this.lastError = null;
    this.session = await this.api.createSession({
      R: options.R,
      human_role: options.role,
      opponent_policy: options.opponentPolicy,
      noise_e: options.noiseE ?? 0,
      ...(options.seed !== undefined ? { seed: options.seed } : {}),
    });
    this.status = "open";
    this.history = [];
    this.bankrollSeries = [];
    this.cheat = null;
    this.lastDetector = null;
    this.sliderValue = this.domain.min;
    this.heatmap = await HeatmapCache.fetch(
      this.api,
      options.R,
      options.heatmapGrid ?? 101,
    );
    const equilibrium = await this.api.getEquilibrium(options.R);
    this.suggestedEta = equilibrium.eta_tilde;
    return true;
  }

  /** Clamp any control input into the role's legal domain. */
  setSlider(value: number): void {
    this.sliderValue = clampParameter(this.role, value);
  }

  /** Post one round with the current slider value. */
  async playRound(): Promise<RoundRecord | null> {
    if (this.busy || this.status !== "open" || !this.session) {
      return null;
    }
    this.busy = true;
    this.lastError = null;
    const parameter = clampParameter(this.role, this.sliderValue);
    const body =
      this.role === "alice"
        ? { epsilon: parameter, bet: true }
        : { eta: parameter, bet: true };
    try {
      const result = await this.api.playRound(
        this.session.session_id,
        body,
      );
      const record: RoundRecord = {
        index: result.round_index,
        parameterPlayed: parameter,
        detector: result.detector,
        payoff: result.payoff,
        bankroll: result.bankroll,
        machineParameters: result.machine_parameters,
        commitment: result.commitment,
        commitmentNonce: result.commitment_nonce,
      };
      this.history.push(record);
      this.bankrollSeries.push(result.bankroll);
      this.cheat = result.cheat;
      this.lastDetector = result.detector;
      return record;
    } catch (error) {
      if (error instanceof ApiError) {
        // 4xx surfaces inline next to the slider; 409 means the table closed
        this.lastError = error.detail;
        if (error.status === 409) {
          this.status = "closed";
        }
        return null;
      }
      throw error;
    } finally {
      this.busy = false;
    }
  }

  /** Re-sync history and bankroll from the server ledger. */
  async refresh(): Promise<void> {
    if (!this.session) return;
    const [summary, ledger] = await Promise.all([
      this.api.getSession(this.session.session_id),
      this.api.getLedger(this.session.session_id),
    ]);
    this.status = summary.status;
    this.cheat = summary.cheat;
    this.history = ledger.rounds.map((row) => {
      const machineParameters: Record<string, number> =
        this.role === "alice" ? { bob: row.eta } : { alice: row.epsilon };
      return {
        index: row.index,
        parameterPlayed: this.role === "alice" ? row.epsilon : row.eta,
        detector: row.detector,
        payoff: row.payoff,
        bankroll: row.bankroll,
        machineParameters,
        commitment: row.commitment,
        commitmentNonce: row.commitment_nonce,
      };
    });
    this.bankrollSeries = ledger.rounds.map((row) => row.bankroll);
  }

  async close(): Promise<void> {
    if (!this.session) return;
    await this.api.closeSession(this.session.session_id);
    this.status = "closed";
  }

  get bankroll(): number {
    return this.bankrollSeries.length
      ? this.bankrollSeries[this.bankrollSeries.length - 1]
      : 0;
  }
}
