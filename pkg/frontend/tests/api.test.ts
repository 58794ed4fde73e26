// Fetch-level behavior of the API wrappers.

import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiError, fetchForecast, fetchZones, postRecommend } from "../src/api";
import forecastFixture from "./fixtures/forecast_rangpur_2023.json";
import recommendFixture from "./fixtures/recommend_rangpur_2023.json";
import zonesFixture from "./fixtures/zones.json";

function jsonResponse(payload: unknown, status = 200): Response {
  return {
    ok: status < 400,
    status,
    statusText: String(status),
    json: async () => payload,
  } as Response;
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("api wrappers", () => {
  it("fetches zones from /api/zones", async () => {
    const fetchMock = vi.fn(async () => jsonResponse(zonesFixture));
    vi.stubGlobal("fetch", fetchMock);
    const zones = await fetchZones();
    expect(fetchMock).toHaveBeenCalledWith("/api/zones");
    expect(zones).toEqual(zonesFixture);
  });

  it("passes station and year as forecast query parameters", async () => {
    const fetchMock = vi.fn(async () => jsonResponse(forecastFixture));
    vi.stubGlobal("fetch", fetchMock);
    const weather = await fetchForecast("Rangpur", 2023);
    expect(fetchMock).toHaveBeenCalledWith("/api/forecast?station=Rangpur&year=2023");
    expect(weather.temperature[0]).toBe(15.8);
  });

  it("posts the recommend body as JSON", async () => {
    const fetchMock = vi.fn(async () => jsonResponse(recommendFixture));
    vi.stubGlobal("fetch", fetchMock);
    const body = { lat: 25.74058, lon: 89.261139, year: 2023, exclude_crops: [] };
    const rec = await postRecommend(body);
    const [url, init] = fetchMock.mock.calls[0] as unknown as [string, RequestInit];
    expect(url).toBe("/api/recommend");
    expect(init.method).toBe("POST");
    expect(JSON.parse(init.body as string)).toEqual(body);
    expect(rec.ranked).toHaveLength(7);
  });

  it("surfaces error bodies as coded ApiError", async () => {
    const fetchMock = vi.fn(async () => jsonResponse(
      { code: "unknown_station", message: "unknown station 'Atlantis'" }, 404));
    vi.stubGlobal("fetch", fetchMock);
    await expect(fetchForecast("Atlantis", 2023)).rejects.toThrowError(ApiError);
    await expect(fetchForecast("Atlantis", 2023)).rejects.toMatchObject({
      code: "unknown_station",
    });
  });

  it("copes with non-JSON error bodies", async () => {
    const broken = {
      ok: false,
      status: 502,
      statusText: "Bad Gateway",
      json: async () => {
        throw new Error("not json");
      },
    } as unknown as Response;
    vi.stubGlobal("fetch", vi.fn(async () => broken));
    await expect(fetchZones()).rejects.toMatchObject({ code: "unknown" });
  });
});
