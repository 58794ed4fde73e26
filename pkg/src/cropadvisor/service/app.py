"""HTTP JSON API over the recommendation pipeline.

The bundle loads (and the two models train) once at startup; every
endpoint afterwards is a read over immutable state.  The per-(station,
year) forecast cache is the only mutable structure; a future per key keeps
each forecast computed at most once under concurrency.
"""

from __future__ import annotations

import math
import threading
from concurrent.futures import Future
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from ..geo import GeoPoint
from ..pipeline import (
    LoadedBundle,
    MonthlyWeather,
    PipelineError,
    forecast_weather,
    load_bundle,
    recommend,
)
from .config import ServiceConfig
from .schemas import (
    ApiErrorBody,
    MonthlyWeatherOut,
    RecommendRequest,
    RecommendationOut,
    ZoneOut,
)

CACHE_HEADER = "X-Forecast-Cache"


class ApiException(Exception):
    def __init__(self, status: int, code: str, message: str, stage: str | None = None):
        self.status = status
        self.code = code
        self.message = message
        self.stage = stage
        super().__init__(message)


class ForecastCache:
    """Insert-if-absent cache with at-most-once computation per key."""

    def __init__(self):
        self._lock = threading.Lock()
        self._entries: dict[tuple, Future] = {}

    def get(self, key, compute):
        """Returns (value, was_cached)."""
        with self._lock:
            fut = self._entries.get(key)
            owner = fut is None
            if owner:
                fut = Future()
                self._entries[key] = fut
        if owner:
            try:
                fut.set_result(compute())
            except BaseException as exc:
                with self._lock:
                    self._entries.pop(key, None)
                fut.set_exception(exc)
                raise
            return fut.result(), False
        return fut.result(), True


def create_app(config: ServiceConfig, bundle: LoadedBundle | None = None) -> FastAPI:
    """Build the application; the bundle loads on startup unless supplied."""
    state = {"bundle": bundle, "cache": ForecastCache(), "year_bounds": None}

    def year_bounds(loaded: LoadedBundle) -> tuple[int, int]:
        years = [r.year for rows in loaded.weather.values() for r in rows]
        return min(years), max(years) + config.max_years_ahead

    if bundle is not None:
        state["year_bounds"] = year_bounds(bundle)

    from contextlib import asynccontextmanager

    @asynccontextmanager
    async def lifespan(_app: FastAPI):
        if state["bundle"] is None:
            state["bundle"] = load_bundle(config.bundle_path, seed=config.train_seed)
            state["year_bounds"] = year_bounds(state["bundle"])
        yield

    app = FastAPI(title="cropadvisor", docs_url="/api/docs",
                  openapi_url="/api/openapi.json", lifespan=lifespan)

    def ready_bundle() -> LoadedBundle:
        loaded = state["bundle"]
        if loaded is None:
            raise ApiException(503, "bundle_not_ready", "bundle is still loading")
        return loaded

    def check_year(year: int):
        low, high = state["year_bounds"]
        if not low <= year <= high:
            raise ApiException(422, "year_out_of_range",
                               f"year {year} outside supported range {low}..{high}")

    def cached_forecast(loaded: LoadedBundle, station: str, year: int):
        def compute() -> MonthlyWeather:
            return forecast_weather(station, year, loaded.weather)
        return state["cache"].get((station, year), compute)

    @app.exception_handler(ApiException)
    async def _api_error(_req: Request, exc: ApiException):
        body = ApiErrorBody(code=exc.code, message=exc.message, stage=exc.stage)
        return JSONResponse(status_code=exc.status, content=body.model_dump())

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_req: Request, exc: RequestValidationError):
        body = ApiErrorBody(code="validation_error", message=str(exc.errors()))
        return JSONResponse(status_code=422, content=body.model_dump())

    @app.exception_handler(PipelineError)
    async def _pipeline_error(_req: Request, exc: PipelineError):
        body = ApiErrorBody(code="pipeline_error", message=str(exc), stage=exc.stage)
        return JSONResponse(status_code=500, content=body.model_dump())

    @app.exception_handler(Exception)
    async def _unhandled(_req: Request, exc: Exception):
        body = ApiErrorBody(code="internal_error", message=str(exc))
        return JSONResponse(status_code=500, content=body.model_dump())

    @app.get("/api/zones", response_model=list[ZoneOut])
    def zones():
        loaded = ready_bundle()
        return [ZoneOut.from_domain(z) for z in loaded.zones]

    @app.get("/api/forecast", response_model=MonthlyWeatherOut)
    def forecast_endpoint(station: str, year: int):
        loaded = ready_bundle()
        if not any(r.station == station for r in loaded.weather["temperature"]):
            raise ApiException(404, "unknown_station", f"unknown station {station!r}")
        check_year(year)
        weather, hit = cached_forecast(loaded, station, year)
        payload = MonthlyWeatherOut.from_domain(weather)
        return JSONResponse(content=payload.model_dump(),
                            headers={CACHE_HEADER: "hit" if hit else "miss"})

    @app.post("/api/recommend", response_model=RecommendationOut)
    def recommend_endpoint(body: RecommendRequest):
        loaded = ready_bundle()
        if not (math.isfinite(body.lat) and math.isfinite(body.lon)
                and -90.0 <= body.lat <= 90.0 and -180.0 <= body.lon <= 180.0):
            raise ApiException(400, "invalid_coordinates",
                               f"coordinates ({body.lat}, {body.lon}) out of range")
        check_year(body.year)
        point = GeoPoint(body.lat, body.lon)

        def provider(station, year):
            weather, _ = cached_forecast(loaded, station, year)
            return weather

        rec = recommend(point, body.year, loaded,
                        exclude_crops=tuple(body.exclude_crops),
                        weather_provider=provider)
        return RecommendationOut.from_domain(rec)

    static_dir = config.static_dir
    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
