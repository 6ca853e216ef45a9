/** DOM rendering for the table view model.
 *
 * Pure presentation: canvases, lamps and lists redrawn from model
 * state.  The only numeric work here is scaling values onto pixels.
 */

import type { CheatStatus } from "./api.js";
import { PARAMETER_DOMAINS } from "./domain.js";
import type { HeatmapCache } from "./heatmap.js";
import type { TableViewModel } from "./table.js";

export function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

export function renderSessionBar(model: TableViewModel): void {
  const session = model.session;
  if (!session) return;
  el("session-info").textContent =
    `R=${session.R} · you play ${session.human_role} · ` +
    `machine policy ${session.opponent_policy} · noise ${session.noise_e} · ` +
    `seed ${session.seed}`;
  el("session-status").textContent = model.status;
  el("session-status").className = `status status-${model.status}`;
}

export function renderSlider(model: TableViewModel): void {
  const domain = model.domain;
  const slider = el<HTMLInputElement>("parameter-slider");
  slider.min = String(domain.min);
  slider.max = String(domain.max);
  slider.step = "0.001";
  slider.value = String(model.sliderValue);
  el("parameter-label").textContent = domain.name;
  el("parameter-value").textContent = model.sliderValue.toFixed(3);
  el("domain-label").textContent = `[${domain.min}, ${domain.max}]`;
}

export function renderError(model: TableViewModel): void {
  const banner = el("inline-error");
  banner.textContent = model.lastError ?? "";
  banner.style.display = model.lastError ? "block" : "none";
}

export function renderLamps(model: TableViewModel): void {
  for (const name of ["D1", "D2", "D3"] as const) {
    const lamp = el(`lamp-${name}`);
    lamp.classList.toggle("fired", model.lastDetector === name);
  }
  if (model.lastDetector) {
    const lamp = el(`lamp-${model.lastDetector}`);
    lamp.classList.remove("flash");
    // retrigger the CSS animation
    void lamp.offsetWidth;
    lamp.classList.add("flash");
  }
}

export function renderCheat(cheat: CheatStatus | null): void {
  const badge = el("cheat-indicator");
  if (!cheat) {
    badge.textContent = "cheat test: no rounds yet";
    badge.className = "cheat neutral";
    return;
  }
  if (!cheat.available) {
    badge.textContent = `cheat test: n/a (${cheat.reason})`;
    badge.className = "cheat neutral";
    return;
  }
  if (cheat.flagged) {
    badge.textContent =
      `CHEATING FLAGGED · ${cheat.d3_count} flag clicks in ` +
      `${cheat.rounds_observed} rounds (p=${cheat.p_value?.toExponential(2)})`;
    badge.className = "cheat flagged";
  } else {
    badge.textContent =
      `cheat test clean · ${cheat.d3_count}/${cheat.rounds_observed} flag ` +
      `clicks (p=${cheat.p_value?.toFixed(3)})`;
    badge.className = "cheat clean";
  }
}

export function renderHistory(model: TableViewModel): void {
  const list = el("history");
  list.innerHTML = "";
  const rows = [...model.history].reverse();
  for (const round of rows.slice(0, 50)) {
    const item = document.createElement("li");
    const payoff = round.payoff > 0 ? `+${round.payoff}` : `${round.payoff}`;
    const machine = model.revealMachineParameter
      ? Object.entries(round.machineParameters)
          .map(([role, v]) => ` · machine ${role}: ${v.toFixed(4)}`)
          .join("")
      : "";
    item.textContent =
      `#${round.index} ${round.detector} ${payoff} coins · ` +
      `bank ${round.bankroll}${machine}`;
    item.className = `round-${round.detector}`;
    list.appendChild(item);
  }
  el("bankroll-value").textContent = String(model.bankroll);
}

export function renderBankrollChart(model: TableViewModel): void {
  const canvas = el<HTMLCanvasElement>("bankroll-chart");
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  const { width, height } = canvas;
  ctx.clearRect(0, 0, width, height);
  const series = [0, ...model.bankrollSeries];
  const min = Math.min(...series, 0);
  const max = Math.max(...series, 0);
  const span = max - min || 1;
  const x = (i: number) => (i / Math.max(1, series.length - 1)) * (width - 8) + 4;
  const y = (v: number) => height - 4 - ((v - min) / span) * (height - 8);
  ctx.strokeStyle = "#555";
  ctx.beginPath();
  ctx.moveTo(x(0), y(0));
  ctx.lineTo(x(series.length - 1), y(0));
  ctx.stroke();
  ctx.strokeStyle = "#ffd166";
  ctx.lineWidth = 2;
  ctx.beginPath();
  series.forEach((v, i) => (i ? ctx.lineTo(x(i), y(v)) : ctx.moveTo(x(i), y(v))));
  ctx.stroke();
}

export function renderHeatmap(model: TableViewModel): void {
  const heatmap = model.heatmap;
  const canvas = el<HTMLCanvasElement>("heatmap");
  const ctx = canvas.getContext("2d");
  if (!heatmap || !ctx) return;
  const gain = heatmap.data.gain!;
  const { min, max } = heatmap.gainRange();
  const rows = gain.length;
  const cols = gain[0].length;
  const cellW = canvas.width / cols;
  const cellH = canvas.height / rows;
  for (let i = 0; i < rows; i++) {
    for (let j = 0; j < cols; j++) {
      const t = (gain[i][j] - min) / (max - min || 1);
      // diverging blue -> dark -> gold, scaling only
      const r = Math.round(40 + 215 * t);
      const g = Math.round(60 + 140 * t);
      const b = Math.round(150 - 110 * t);
      ctx.fillStyle = `rgb(${r},${g},${b})`;
      // epsilon grows upward
      ctx.fillRect(j * cellW, canvas.height - (i + 1) * cellH, cellW + 1, cellH + 1);
    }
  }
  if (model.suggestedEta !== null) {
    const x = (model.suggestedEta / 1.0) * canvas.width;
    ctx.strokeStyle = "rgba(255,255,255,0.9)";
    ctx.setLineDash([6, 4]);
    ctx.beginPath();
    ctx.moveTo(x, 0);
    ctx.lineTo(x, canvas.height);
    ctx.stroke();
    ctx.setLineDash([]);
  }
}

export function heatmapReadout(
  model: TableViewModel,
  canvas: HTMLCanvasElement,
  offsetX: number,
  offsetY: number,
): string | null {
  const heatmap = model.heatmap as HeatmapCache | null;
  if (!heatmap) return null;
  const domain = PARAMETER_DOMAINS.alice;
  const eta = (offsetX / canvas.clientWidth) * 1.0;
  const epsilon = (1 - offsetY / canvas.clientHeight) * domain.max;
  const cell = heatmap.lookup(epsilon, eta);
  if (!cell) return null;
  return (
    `ε=${cell.epsilon.toFixed(3)} η=${cell.eta.toFixed(3)} · ` +
    `p1=${cell.p1.toFixed(3)} p2=${cell.p2.toFixed(3)} ` +
    `p3=${cell.p3.toFixed(3)} · gain ${cell.gain.toFixed(3)}`
  );
}

export function renderAll(model: TableViewModel): void {
  renderSessionBar(model);
  renderSlider(model);
  renderError(model);
  renderLamps(model);
  renderCheat(model.cheat);
  renderHistory(model);
  renderBankrollChart(model);
  renderHeatmap(model);
  const bet = el<HTMLButtonElement>("bet-button");
  bet.disabled = model.busy || model.status !== "open";
  bet.textContent =
    model.status === "closed" ? "session closed" : "BET 1 COIN";
}
