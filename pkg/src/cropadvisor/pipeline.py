"""End-to-end orchestration: location -> zone -> primary crops -> weather
forecast -> disease prediction -> yield prediction -> ranked recommendation."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .data.fixtures import load_manifest
from .data.schemas import (
    CropRequirement,
    DiseaseRecord,
    WeatherRow,
    YieldRecord,
    encode_nutrient,
    load_dataset,
)
from .geo import GeoPoint, SoilProfile, ZoneRecord, nearest_zone
from .models import (
    LabeledTable,
    TrainedModel,
    load_model,
    train_classifier,
    train_regressor,
)
from .timeseries import (
    FitError,
    SarimaxOrder,
    TimeSeries,
    fit,
    fitted_from_params,
    forecast,
)

# Published best orders for the three weather variables.
TEMPERATURE_ORDER = SarimaxOrder(1, 0, 0, 2, 1, 0, 12)
RAINFALL_ORDER = SarimaxOrder(1, 0, 0, 0, 1, 1, 12)
HUMIDITY_ORDER = SarimaxOrder(1, 0, 1, 1, 1, 0, 12)

DISEASE_MODEL_KIND = "SVC"
YIELD_MODEL_KIND = "DTR"

NO_DISEASE = "None"


class PipelineError(RuntimeError):
    """A pipeline stage failed; carries the stage name."""

    def __init__(self, stage: str, message: str):
        self.stage = stage
        super().__init__(f"[{stage}] {message}")


@dataclass(frozen=True)
class MonthlyWeather:
    """One value per calendar month, January first."""

    temperature: tuple[float, ...]
    rainfall: tuple[float, ...]
    humidity: tuple[float, ...]

    def __post_init__(self):
        for name in ("temperature", "rainfall", "humidity"):
            vals = tuple(float(v) for v in getattr(self, name))
            if len(vals) != 12:
                raise ValueError(f"{name} must have 12 months, got {len(vals)}")
            object.__setattr__(self, name, vals)
        if min(self.rainfall) < 0:
            raise ValueError("rainfall must be non-negative")
        if min(self.humidity) < 0 or max(self.humidity) > 100:
            raise ValueError("humidity must lie in [0, 100]")

    @property
    def annual_mean_temperature(self) -> float:
        return sum(self.temperature) / 12.0

    @property
    def annual_rainfall(self) -> float:
        return sum(self.rainfall)


@dataclass(frozen=True)
class CropAssessment:
    crop: str
    predicted_production: float
    diseases: tuple[str, ...]

    def __post_init__(self):
        if self.predicted_production < 0:
            raise ValueError("production must be >= 0")
        object.__setattr__(self, "diseases", tuple(self.diseases))

    @property
    def disease_count(self) -> int:
        return len(self.diseases)


@dataclass(frozen=True)
class Recommendation:
    zone: ZoneRecord
    weather: MonthlyWeather
    ranked: tuple[CropAssessment, ...]


@dataclass
class LoadedBundle:
    """Validated datasets plus the two trained models."""

    zones: list[ZoneRecord]
    crop_requirements: list[CropRequirement]
    yield_records: list[YieldRecord]
    disease_records: list[DiseaseRecord]
    weather: dict[str, list[WeatherRow]] = field(default_factory=dict)
    disease_model: TrainedModel = None
    yield_model: TrainedModel = None


# ---------------------------------------------------------------------------
# training views


def disease_training_table(records: list[DiseaseRecord]) -> LabeledTable:
    """Classifier view: weather pair, coordinates, crop one-hots."""
    crops = sorted({r.crop for r in records})
    names = ("temperature", "humidity", "latitude", "longitude") \
        + tuple(f"crop={c}" for c in crops)
    crop_pos = {c: 4 + i for i, c in enumerate(crops)}
    x = np.zeros((len(records), len(names)))
    labels = []
    for i, rec in enumerate(records):
        x[i, 0] = rec.temperature
        x[i, 1] = rec.humidity
        x[i, 2] = rec.location.lat
        x[i, 3] = rec.location.lon
        x[i, crop_pos[rec.crop]] = 1.0
        labels.append(rec.disease)
    vocabulary = tuple(sorted(set(labels) | {NO_DISEASE}))
    return LabeledTable(names, x, np.asarray(labels, dtype=object), vocabulary)


def yield_training_table(records: list[YieldRecord]) -> LabeledTable:
    """Regressor view: temperature, rainfall, pH, crop one-hots."""
    crops = sorted({r.crop for r in records})
    names = ("temperature", "rainfall", "ph") + tuple(f"crop={c}" for c in crops)
    crop_pos = {c: 3 + i for i, c in enumerate(crops)}
    x = np.zeros((len(records), len(names)))
    y = np.zeros(len(records))
    for i, rec in enumerate(records):
        x[i, 0] = rec.temperature
        x[i, 1] = rec.rainfall
        x[i, 2] = rec.ph
        x[i, crop_pos[rec.crop]] = 1.0
        y[i] = rec.production
    return LabeledTable(names, x, y)


# ---------------------------------------------------------------------------
# bundle loading


def load_bundle(manifest_path, seed: int = 0) -> LoadedBundle:
    """Load the seven datasets named by a manifest and train (or load) the
    disease and yield models."""
    manifest_path = Path(manifest_path)
    doc = load_manifest(manifest_path)
    base = manifest_path.parent
    paths = doc["datasets"]

    def dataset(name):
        if name not in paths:
            raise PipelineError("load_bundle", f"manifest missing dataset {name!r}")
        return load_dataset(base / paths[name], name)

    bundle = LoadedBundle(
        zones=dataset("soil_nutrition"),
        crop_requirements=dataset("crop_nutrition"),
        yield_records=dataset("crop_production"),
        disease_records=dataset("crop_disease"),
        weather={
            "temperature": dataset("temperature_monthly"),
            "rainfall": dataset("rainfall_monthly"),
            "humidity": dataset("humidity_monthly"),
        },
    )
    if not bundle.zones:
        raise PipelineError("load_bundle", "zone table is empty")
    models_doc = doc.get("models") or {}
    disease_path = models_doc.get("disease")
    yield_path = models_doc.get("yield")
    bundle.disease_model = (
        load_model(base / disease_path) if disease_path
        else train_classifier(DISEASE_MODEL_KIND,
                              disease_training_table(bundle.disease_records), seed))
    bundle.yield_model = (
        load_model(base / yield_path) if yield_path
        else train_regressor(YIELD_MODEL_KIND,
                             yield_training_table(bundle.yield_records), seed))
    return bundle


def bundle_from_memory(data_bundle, seed: int = 0) -> LoadedBundle:
    """Wrap an in-memory data bundle, training the two models."""
    bundle = LoadedBundle(
        zones=list(data_bundle.zones),
        crop_requirements=list(data_bundle.crop_requirements),
        yield_records=list(data_bundle.yield_records),
        disease_records=list(data_bundle.disease_records),
        weather={
            "temperature": list(data_bundle.temperature),
            "rainfall": list(data_bundle.rainfall),
            "humidity": list(data_bundle.humidity),
        },
    )
    if not bundle.zones:
        raise PipelineError("load_bundle", "zone table is empty")
    bundle.disease_model = train_classifier(
        DISEASE_MODEL_KIND, disease_training_table(bundle.disease_records), seed)
    bundle.yield_model = train_regressor(
        YIELD_MODEL_KIND, yield_training_table(bundle.yield_records), seed)
    return bundle


# ---------------------------------------------------------------------------
# stages


def primary_crops(soil: SoilProfile, requirements: list[CropRequirement]) -> list[str]:
    """Crops whose specified nutrient demands the soil meets, alphabetical.

    A nutrient participates only when both sides specify it; the soil level
    must be at least the required level on the ordinal scale.
    """
    chosen = []
    soil_levels = {
        "nitrogen": soil.nitrogen,
        "phosphorus": soil.phosphorus,
        "potassium": soil.potassium,
    }
    for req in requirements:
        ok = True
        for nutrient in ("nitrogen", "phosphorus", "potassium"):
            required = getattr(req, nutrient)
            available = soil_levels[nutrient]
            if required is None or available is None:
                continue
            if encode_nutrient(available) < encode_nutrient(required):
                ok = False
                break
        if ok:
            chosen.append(req.crop)
    return sorted(chosen)


def _station_series(rows: list[WeatherRow], station: str, what: str) -> TimeSeries:
    mine = sorted(((r.year, r.month, r.value) for r in rows if r.station == station))
    if not mine:
        raise PipelineError("forecast_weather", f"unknown station {station!r} in {what}")
    start = mine[0][0] * 12 + mine[0][1] - 1
    for i, (year, month, _) in enumerate(mine):
        if year * 12 + month - 1 != start + i:
            raise PipelineError(
                "forecast_weather",
                f"{what} history for {station!r} has a gap before {year}-{month:02d}")
    return TimeSeries(mine[0][0], mine[0][1], [v for _, _, v in mine])


def _observed_year(rows: list[WeatherRow], station: str, year: int) -> list[float] | None:
    vals = {r.month: r.value for r in rows if r.station == station and r.year == year}
    if len(vals) == 12:
        return [vals[m] for m in range(1, 13)]
    return None


def forecast_weather(station: str, year: int,
                     weather: dict[str, list[WeatherRow]]) -> MonthlyWeather:
    """The target year's twelve months for a station.

    Months already present in the tables are returned as-is; otherwise the
    three models are fit with the published orders and the target year is
    taken from the forecast horizon.  Rainfall is floored at zero after
    interval computation.
    """
    if not any(r.station == station for r in weather["temperature"]):
        raise PipelineError("forecast_weather", f"unknown station {station!r}")

    observed = {name: _observed_year(weather[name], station, year)
                for name in ("temperature", "rainfall", "humidity")}
    if all(v is not None for v in observed.values()):
        return MonthlyWeather(tuple(observed["temperature"]),
                              tuple(max(0.0, v) for v in observed["rainfall"]),
                              tuple(observed["humidity"]))

    out = {}
    orders = {"temperature": TEMPERATURE_ORDER, "rainfall": RAINFALL_ORDER,
              "humidity": HUMIDITY_ORDER}
    for name in ("temperature", "rainfall", "humidity"):
        series = _station_series(weather[name], station, name)
        last_year, _ = series.month_at(len(series) - 1)
        if year <= last_year:
            raise PipelineError(
                "forecast_weather",
                f"target year {year} is partially covered by the {name} history "
                f"for {station!r}; need either a full observed year or a future year")
        horizon = (year * 12 + 11) - (last_year * 12
                                      + series.month_at(len(series) - 1)[1] - 1)
        try:
            model = fit(series, orders[name])
        except FitError as exc:
            if "zero variance" not in str(exc):
                raise PipelineError(
                    "forecast_weather",
                    f"{name} model fit failed for {station!r}: {exc}") from exc
            # deterministic history: the differenced series vanishes, so the
            # model degenerates to pure seasonal/trend repetition
            order = orders[name]
            model = fitted_from_params(
                series, order, [0.0] * (order.param_count - 1) + [1e-12])
        except Exception as exc:
            raise PipelineError("forecast_weather",
                                f"{name} model fit failed for {station!r}: {exc}") from exc
        points = list(forecast(model, horizon).point_forecasts[-12:])
        if name == "rainfall":
            points = [max(0.0, v) for v in points]
        if name == "humidity":
            points = [min(100.0, max(0.0, v)) for v in points]
        out[name] = tuple(points)
    return MonthlyWeather(out["temperature"], out["rainfall"], out["humidity"])


def _feature_row(model: TrainedModel, base: dict[str, float], crop: str,
                 stage: str) -> list[float]:
    crop_key = f"crop={crop}"
    if crop_key not in model.feature_names:
        raise PipelineError(stage, f"crop {crop!r} is outside the model's encoding")
    row = []
    for name in model.feature_names:
        if name == crop_key:
            row.append(1.0)
        elif name.startswith("crop="):
            row.append(0.0)
        elif name in base:
            row.append(base[name])
        else:
            raise PipelineError(stage, f"model expects unknown feature {name!r}")
    return row


def predict_diseases(crops: list[str], weather: MonthlyWeather, zone: ZoneRecord,
                     model: TrainedModel) -> dict[str, tuple[str, ...]]:
    """Distinct non-healthy predictions over the twelve month conditions,
    per crop, sorted alphabetically."""
    out = {}
    for crop in crops:
        rows = []
        for month in range(12):
            rows.append(_feature_row(model, {
                "temperature": weather.temperature[month],
                "humidity": weather.humidity[month],
                "latitude": zone.location.lat,
                "longitude": zone.location.lon,
            }, crop, "predict_diseases"))
        idx = model.predict_matrix(np.asarray(rows))
        labels = {model.label_vocabulary[int(i)] for i in idx}
        out[crop] = tuple(sorted(labels - {NO_DISEASE}))
    return out


def predict_yields(crops: list[str], soil: SoilProfile, weather: MonthlyWeather,
                   model: TrainedModel) -> dict[str, float]:
    """Predicted production per crop from the annual weather aggregates and
    the soil pH midpoint; negative raw outputs clamp to zero."""
    out = {}
    base = {
        "temperature": weather.annual_mean_temperature,
        "rainfall": weather.annual_rainfall,
        "ph": soil.ph_midpoint,
    }
    for crop in crops:
        row = _feature_row(model, base, crop, "predict_yields")
        out[crop] = max(0.0, float(model.predict_matrix(np.asarray([row]))[0]))
    return out


def rank_assessments(assessments) -> tuple[CropAssessment, ...]:
    """Production descending; exact production ties by crop name ascending."""
    return tuple(sorted(assessments, key=lambda a: (-a.predicted_production, a.crop)))


def recommend(point: GeoPoint, year: int, bundle: LoadedBundle,
              exclude_crops: tuple[str, ...] = (),
              weather_provider=None) -> Recommendation:
    """Full pipeline run; failures carry the stage that raised them.

    ``weather_provider(station, year)`` overrides the forecasting stage;
    the service passes its cache through here.
    """
    try:
        zone = nearest_zone(point, bundle.zones)
    except ValueError as exc:
        raise PipelineError("nearest_zone", str(exc)) from exc

    crops = primary_crops(zone.soil, bundle.crop_requirements)
    excluded = set(exclude_crops)
    crops = [c for c in crops if c not in excluded]

    if weather_provider is None:
        weather = forecast_weather(zone.met_station, year, bundle.weather)
    else:
        weather = weather_provider(zone.met_station, year)
    diseases = predict_diseases(crops, weather, zone, bundle.disease_model)
    productions = predict_yields(crops, zone.soil, weather, bundle.yield_model)

    ranked = rank_assessments(
        CropAssessment(c, productions[c], diseases[c]) for c in crops)
    return Recommendation(zone=zone, weather=weather, ranked=ranked)
