// Thin fetch wrappers over the service endpoints.

import type { MonthlyWeather, Recommendation, RecommendRequest, Zone } from "./types";

const BASE = "";

export class ApiError extends Error {
  code: string;
  stage: string | null;

  constructor(code: string, message: string, stage: string | null = null) {
    super(message);
    this.code = code;
    this.stage = stage;
  }
}

async function parseError(res: Response): Promise<ApiError> {
  try {
    const body = await res.json();
    return new ApiError(body.code ?? "unknown", body.message ?? res.statusText,
      body.stage ?? null);
  } catch {
    return new ApiError("unknown", `${res.status} ${res.statusText}`);
  }
}

export async function fetchZones(): Promise<Zone[]> {
  const res = await fetch(`${BASE}/api/zones`);
  if (!res.ok) throw await parseError(res);
  return res.json();
}

export async function fetchForecast(station: string, year: number): Promise<MonthlyWeather> {
  const params = new URLSearchParams({ station, year: String(year) });
  const res = await fetch(`${BASE}/api/forecast?${params}`);
  if (!res.ok) throw await parseError(res);
  return res.json();
}

export async function postRecommend(body: RecommendRequest): Promise<Recommendation> {
  const res = await fetch(`${BASE}/api/recommend`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  });
  if (!res.ok) throw await parseError(res);
  return res.json();
}

export interface ApiClient {
  zones(): Promise<Zone[]>;
  recommend(body: RecommendRequest): Promise<Recommendation>;
}

export const liveApi: ApiClient = {
  zones: fetchZones,
  recommend: postRecommend,
};
