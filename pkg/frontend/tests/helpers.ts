// Shared test scaffolding: DOM shell, a faithful fake API over the
// recorded fixtures, and promise flushing.

import type { ApiClient } from "../src/api";
import { App } from "../src/app";
import type { Recommendation, RecommendRequest, Zone } from "../src/types";

import zonesFixture from "./fixtures/zones.json";
import recommendFixture from "./fixtures/recommend_rangpur_2023.json";

export const ZONES = zonesFixture as unknown as Zone[];
export const RECOMMEND = recommendFixture as unknown as Recommendation;

export function buildDom(): void {
  document.body.innerHTML = `
    <div id="error-banner" hidden></div>
    <select id="zone-select"></select>
    <input id="year-input" type="number">
    <div id="zone-map-container"></div>
    <span id="status"></span>
    <div id="ranking"></div>
    <div id="charts"></div>
  `;
}

export function elements() {
  return {
    banner: document.getElementById("error-banner") as HTMLElement,
    zoneSelect: document.getElementById("zone-select") as HTMLSelectElement,
    mapContainer: document.getElementById("zone-map-container") as HTMLElement,
    yearInput: document.getElementById("year-input") as HTMLInputElement,
    ranking: document.getElementById("ranking") as HTMLElement,
    charts: document.getElementById("charts") as HTMLElement,
    status: document.getElementById("status") as HTMLElement,
  };
}

export async function flush(): Promise<void> {
  for (let i = 0; i < 4; i += 1) {
    await new Promise((resolve) => setTimeout(resolve, 0));
  }
}

/** Serves the recorded fixtures; exclusions filter the recorded ranking the
 * same way the service filters the primary list. */
export class FakeApi implements ApiClient {
  zoneCalls = 0;
  recommendCalls: RecommendRequest[] = [];

  async zones(): Promise<Zone[]> {
    this.zoneCalls += 1;
    return ZONES;
  }

  async recommend(body: RecommendRequest): Promise<Recommendation> {
    this.recommendCalls.push(structuredClone(body));
    const excluded = new Set(body.exclude_crops);
    return {
      ...RECOMMEND,
      ranked: RECOMMEND.ranked.filter((a) => !excluded.has(a.crop)),
    };
  }
}

export async function startApp(api: ApiClient = new FakeApi()): Promise<App> {
  buildDom();
  const app = new App(api, elements(), 2023);
  await app.start();
  await flush();
  return app;
}

export async function pickRangpur(app: App): Promise<void> {
  const select = document.getElementById("zone-select") as HTMLSelectElement;
  select.value = "Rangpur";
  select.dispatchEvent(new Event("change"));
  await flush();
}
