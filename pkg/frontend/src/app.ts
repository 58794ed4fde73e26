// Controller: wires the pickers to the API and keeps renders in order.

import type { ApiClient } from "./api";
import { ApiError } from "./api";
import { renderCharts } from "./charts";
import { renderMap } from "./map";
import { clearError, renderError, renderRanking } from "./render";
import {
  RequestSequencer,
  UiState,
  applyRecommendation,
  initialState,
  selectPoint,
  toggleExclusion,
} from "./state";
import type { GeoPoint, Zone } from "./types";

export interface AppElements {
  banner: HTMLElement;
  zoneSelect: HTMLSelectElement;
  mapContainer: HTMLElement;
  yearInput: HTMLInputElement;
  ranking: HTMLElement;
  charts: HTMLElement;
  status: HTMLElement;
}

export class App {
  readonly state: UiState;
  private readonly seq = new RequestSequencer();
  private zones: Zone[] = [];

  constructor(private readonly api: ApiClient, private readonly ui: AppElements,
    defaultYear = 2023) {
    this.state = initialState(defaultYear);
    this.ui.yearInput.value = String(defaultYear);
    this.ui.yearInput.addEventListener("change", () => {
      const year = Number(this.ui.yearInput.value);
      if (Number.isInteger(year)) {
        this.state.year = year;
        if (this.state.point) void this.refresh();
      }
    });
    this.ui.zoneSelect.addEventListener("change", () => {
      const zone = this.zones.find(
        (z) => z.sub_district === this.ui.zoneSelect.value);
      if (zone) this.pick({ lat: zone.latitude, lon: zone.longitude });
    });
  }

  async start(): Promise<void> {
    try {
      this.zones = await this.api.zones();
    } catch (err) {
      const e = err instanceof ApiError ? err : new ApiError("unknown", String(err));
      renderError(this.ui.banner, e.code, e.message, () => void this.start());
      return;
    }
    clearError(this.ui.banner);
    this.ui.zoneSelect.replaceChildren(new Option("pick a zone…", "", true, true));
    for (const zone of this.zones) {
      this.ui.zoneSelect.appendChild(new Option(zone.sub_district, zone.sub_district));
    }
    renderMap(this.ui.mapContainer, this.zones, (point, zoneName) => {
      if (zoneName) this.ui.zoneSelect.value = zoneName;
      this.pick(point);
    });
  }

  pick(point: GeoPoint): void {
    selectPoint(this.state, point);
    void this.refresh();
  }

  toggle(crop: string): void {
    toggleExclusion(this.state, crop);
    void this.refresh();
  }

  async refresh(): Promise<void> {
    if (!this.state.point) return;
    const token = this.seq.next();
    this.state.loading = true;
    this.ui.status.textContent = "loading…";
    try {
      const rec = await this.api.recommend({
        lat: this.state.point.lat,
        lon: this.state.point.lon,
        year: this.state.year,
        exclude_crops: [...this.state.exclusions].sort(),
      });
      if (!this.seq.isCurrent(token)) return; // a newer request superseded us
      applyRecommendation(this.state, rec);
      this.render();
    } catch (err) {
      if (!this.seq.isCurrent(token)) return;
      const e = err instanceof ApiError ? err : new ApiError("unknown", String(err));
      this.state.error = { code: e.code, message: e.message };
      renderError(this.ui.banner, e.code, e.message, null);
    } finally {
      if (this.seq.isCurrent(token)) {
        this.state.loading = false;
        this.ui.status.textContent = "";
      }
    }
  }

  private render(): void {
    const rec = this.state.recommendation;
    if (!rec) return;
    clearError(this.ui.banner);
    renderRanking(this.ui.ranking, rec, this.state.primaryCrops,
      this.state.exclusions, (crop) => this.toggle(crop));
    renderCharts(this.ui.charts, rec.weather);
  }
}

export function mount(root: Document, api: ApiClient): App {
  const byId = (id: string) => {
    const node = root.getElementById(id);
    if (!node) throw new Error(`missing element #${id}`);
    return node;
  };
  const app = new App(api, {
    banner: byId("error-banner"),
    zoneSelect: byId("zone-select") as HTMLSelectElement,
    mapContainer: byId("zone-map-container"),
    yearInput: byId("year-input") as HTMLInputElement,
    ranking: byId("ranking"),
    charts: byId("charts"),
    status: byId("status"),
  });
  void app.start();
  return app;
}
