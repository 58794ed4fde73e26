// UI state: selection, exclusions, the latest recommendation, and the
// request sequencing that keeps stale responses from clobbering newer ones.

import type { GeoPoint, Recommendation } from "./types";

export interface UiState {
  point: GeoPoint | null;
  year: number;
  exclusions: Set<string>;
  primaryCrops: string[];
  recommendation: Recommendation | null;
  loading: boolean;
  error: { code: string; message: string } | null;
}

export function initialState(year: number): UiState {
  return {
    point: null,
    year,
    exclusions: new Set(),
    primaryCrops: [],
    recommendation: null,
    loading: false,
    error: null,
  };
}

export class RequestSequencer {
  private issued = 0;

  next(): number {
    this.issued += 1;
    return this.issued;
  }

  isCurrent(token: number): boolean {
    return token === this.issued;
  }
}

export function selectPoint(state: UiState, point: GeoPoint): void {
  // new location: the primary list changes, so exclusions reset
  state.point = point;
  state.exclusions = new Set();
  state.primaryCrops = [];
}

export function toggleExclusion(state: UiState, crop: string): void {
  if (!state.primaryCrops.includes(crop)) return;
  if (state.exclusions.has(crop)) {
    state.exclusions.delete(crop);
  } else {
    state.exclusions.add(crop);
  }
}

export function applyRecommendation(state: UiState, rec: Recommendation): void {
  state.recommendation = rec;
  state.error = null;
  if (state.exclusions.size === 0) {
    // an exclusion-free response enumerates the full primary list
    state.primaryCrops = rec.ranked.map((a) => a.crop);
  }
}
