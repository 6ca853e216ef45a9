/** Expected-gain heatmap cache, fetched once per agreed punishment. */

import type { GambleApi, SweepData } from "./api.js";

export interface CellReadout {
  epsilon: number;
  eta: number;
  p1: number;
  p2: number;
  p3: number;
  gain: number;
}

export class HeatmapCache {
  constructor(public readonly data: SweepData) {
    if (!data.gain) {
      throw new Error("heatmap needs a gain sweep");
    }
  }

  static async fetch(
    api: GambleApi,
    R: number,
    grid = 101,
  ): Promise<HeatmapCache> {
    return new HeatmapCache(await api.getSweep("gain", grid, R));
  }

  /** Nearest grid cell, or null when the hover is outside the domain. */
  lookup(epsilon: number, eta: number): CellReadout | null {
    const { epsilon: eps, eta: etas, p1, p2, p3, gain } = this.data;
    if (
      !Number.isFinite(epsilon) ||
      !Number.isFinite(eta) ||
      epsilon < eps[0] ||
      epsilon > eps[eps.length - 1] ||
      eta < etas[0] ||
      eta > etas[etas.length - 1]
    ) {
      return null;
    }
    const i = nearestIndex(eps, epsilon);
    const j = nearestIndex(etas, eta);
    return {
      epsilon: eps[i],
      eta: etas[j],
      p1: p1[i][j],
      p2: p2[i][j],
      p3: p3[i][j],
      gain: gain![i][j],
    };
  }

  gainRange(): { min: number; max: number } {
    let min = Infinity;
    let max = -Infinity;
    for (const row of this.data.gain!) {
      for (const value of row) {
        if (value < min) min = value;
        if (value > max) max = value;
      }
    }
    return { min, max };
  }
}

function nearestIndex(grid: number[], value: number): number {
  // uniform ascending grid
  const step = (grid[grid.length - 1] - grid[0]) / (grid.length - 1);
  const i = Math.round((value - grid[0]) / step);
  return Math.min(grid.length - 1, Math.max(0, i));
}
