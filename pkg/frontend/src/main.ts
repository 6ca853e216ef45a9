/** Bootstrap: wire the start form and table controls to the view model. */

import { ApiError, GambleApi, type Role } from "./api.js";
import { validatePunishment } from "./domain.js";
import {
  el,
  heatmapReadout,
  renderAll,
  renderError,
  renderSlider,
} from "./render.js";
import { TableViewModel } from "./table.js";

const api = new GambleApi(window.location.origin);
const model = new TableViewModel(api);

function show(id: string, visible: boolean): void {
  el(id).style.display = visible ? "" : "none";
}

async function startTable(): Promise<void> {
  const R = Number(el<HTMLInputElement>("start-R").value);
  const role = el<HTMLSelectElement>("start-role").value as Role;
  const policy = el<HTMLSelectElement>("start-policy").value;
  const policyValue = el<HTMLInputElement>("start-policy-value").value;
  const noiseE = Number(el<HTMLInputElement>("start-noise").value) || 0;
  const seedText = el<HTMLInputElement>("start-seed").value.trim();

  const invalid = validatePunishment(R);
  const startError = el("start-error");
  if (invalid) {
    startError.textContent = invalid;
    return;
  }
  startError.textContent = "";
  const opponentPolicy = policy.includes(":")
    ? `${policy.split(":")[0]}:${policyValue}`
    : policy;
  show("offline-banner", false);
  try {
    await model.start({
      R,
      role,
      opponentPolicy,
      noiseE,
      ...(seedText ? { seed: Number(seedText) } : {}),
    });
  } catch (error) {
    if (error instanceof ApiError) {
      // the service answered: show its complaint on the form
      startError.textContent = error.detail;
      return;
    }
    // service unreachable: blocking banner with retry
    el("offline-detail").textContent = String(error);
    show("offline-banner", true);
    return;
  }
  show("start-form", false);
  show("table", true);
  renderAll(model);
}

function wire(): void {
  el("start-button").addEventListener("click", () => void startTable());
  el("retry-button").addEventListener("click", () => void startTable());

  const policySelect = el<HTMLSelectElement>("start-policy");
  policySelect.addEventListener("change", () => {
    show("start-policy-value", policySelect.value.includes(":"));
  });

  const slider = el<HTMLInputElement>("parameter-slider");
  slider.addEventListener("input", () => {
    model.setSlider(Number(slider.value));
    renderSlider(model);
  });

  el("bet-button").addEventListener("click", async () => {
    el<HTMLButtonElement>("bet-button").disabled = true;
    await model.playRound();
    renderAll(model);
  });

  el("close-button").addEventListener("click", async () => {
    await model.close();
    renderAll(model);
  });

  el("refresh-button").addEventListener("click", async () => {
    await model.refresh();
    renderAll(model);
  });

  const reveal = el<HTMLInputElement>("reveal-toggle");
  reveal.addEventListener("change", () => {
    model.revealMachineParameter = reveal.checked;
    renderAll(model);
  });

  const heatmap = el<HTMLCanvasElement>("heatmap");
  const tooltip = el("heatmap-tooltip");
  heatmap.addEventListener("mousemove", (event) => {
    const text = heatmapReadout(model, heatmap, event.offsetX, event.offsetY);
    if (text) {
      tooltip.textContent = text;
      tooltip.style.display = "block";
    } else {
      tooltip.style.display = "none";
    }
  });
  heatmap.addEventListener("mouseleave", () => {
    tooltip.style.display = "none";
  });
  renderError(model);
}

document.addEventListener("DOMContentLoaded", wire);
