"""The seven CSV dataset schemas: record types, validation, load/write."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

from ..geo import NUTRIENT_LEVELS, GeoPoint, SoilProfile, ZoneRecord

DATASET_NAMES = (
    "soil_nutrition",
    "crop_nutrition",
    "crop_production",
    "crop_disease",
    "temperature_monthly",
    "rainfall_monthly",
    "humidity_monthly",
)


class DataValidationError(ValueError):
    """A dataset rejected a row; message names the row and field."""


def encode_nutrient(level: str) -> int:
    """Ordinal code for a nutrient level: VL=1, L=2, M=3, H=4, VH=5."""
    try:
        return NUTRIENT_LEVELS.index(level) + 1
    except ValueError:
        raise ValueError(f"unknown nutrient level {level!r}; "
                         f"expected one of {NUTRIENT_LEVELS}") from None


@dataclass(frozen=True)
class CropRequirement:
    """Nutrient demand of one crop; a missing level means no requirement."""

    crop: str
    nitrogen: str | None
    phosphorus: str | None
    potassium: str | None

    def __post_init__(self):
        if not self.crop:
            raise ValueError("crop name must be non-empty")
        for name in ("nitrogen", "phosphorus", "potassium"):
            level = getattr(self, name)
            if level is not None and level not in NUTRIENT_LEVELS:
                raise ValueError(f"{name} level {level!r} not in {NUTRIENT_LEVELS}")


@dataclass(frozen=True)
class YieldRecord:
    temperature: float
    rainfall: float
    ph: float
    crop: str
    production: float

    def __post_init__(self):
        for name in ("temperature", "rainfall", "ph", "production"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.production < 0:
            raise ValueError(f"production must be >= 0, got {self.production}")
        if not 0 < self.ph < 14:
            raise ValueError(f"ph {self.ph} outside (0, 14)")
        if not self.crop:
            raise ValueError("crop name must be non-empty")


@dataclass(frozen=True)
class DiseaseRecord:
    region: str
    location: GeoPoint
    temperature: float
    humidity: float
    crop: str
    disease: str

    def __post_init__(self):
        if not math.isfinite(self.temperature) or not math.isfinite(self.humidity):
            raise ValueError("temperature and humidity must be finite")
        if not 0 <= self.humidity <= 100:
            raise ValueError(f"humidity {self.humidity} outside [0, 100]")
        if not self.crop or not self.disease:
            raise ValueError("crop and disease must be non-empty ('None' = healthy)")


@dataclass(frozen=True)
class WeatherRow:
    station: str
    year: int
    month: int
    value: float

    def __post_init__(self):
        if not self.station:
            raise ValueError("station must be non-empty")
        if not 1 <= self.month <= 12:
            raise ValueError(f"month {self.month} outside 1..12")
        if not math.isfinite(self.value):
            raise ValueError("value must be finite")


def _parse_float(raw: str, field: str, row: int) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise DataValidationError(f"row {row}: field {field!r} is not numeric: {raw!r}")
    if not math.isfinite(value):
        raise DataValidationError(f"row {row}: field {field!r} must be finite")
    return value


def _parse_int(raw: str, field: str, row: int) -> int:
    try:
        return int(raw)
    except ValueError:
        raise DataValidationError(f"row {row}: field {field!r} is not an integer: {raw!r}")


def _parse_level(raw: str, field: str, row: int, required: bool):
    if raw == "":
        if required:
            raise DataValidationError(f"row {row}: field {field!r} is required")
        return None
    if raw not in NUTRIENT_LEVELS:
        raise DataValidationError(
            f"row {row}: field {field!r} has unknown level {raw!r}")
    return raw


def _wrap(row_idx: int, fn, *args):
    try:
        return fn(*args)
    except ValueError as exc:
        raise DataValidationError(f"row {row_idx}: {exc}") from exc


def _parse_zone(rec: dict, i: int) -> ZoneRecord:
    point = _wrap(i, GeoPoint, _parse_float(rec["latitude"], "latitude", i),
                  _parse_float(rec["longitude"], "longitude", i))
    soil = _wrap(i, SoilProfile,
                 _parse_float(rec["ph_low"], "ph_low", i),
                 _parse_float(rec["ph_high"], "ph_high", i),
                 _parse_level(rec["phosphorus"], "phosphorus", i, required=True),
                 _parse_level(rec["potassium"], "potassium", i, required=True),
                 _parse_level(rec["nitrogen"], "nitrogen", i, required=False))
    return _wrap(i, ZoneRecord, rec["division"], rec["district"], rec["sub_district"],
                 point, _parse_int(rec["aez_number"], "aez_number", i),
                 rec["aez_name"], rec["met_station"], soil)


def _zone_to_row(z: ZoneRecord) -> list:
    return [z.division, z.district, z.sub_district, z.location.lat, z.location.lon,
            z.aez_number, z.aez_name, z.met_station, z.soil.ph_low, z.soil.ph_high,
            z.soil.phosphorus, z.soil.potassium,
            "" if z.soil.nitrogen is None else z.soil.nitrogen]


def _parse_requirement(rec: dict, i: int) -> CropRequirement:
    return _wrap(i, CropRequirement, rec["crop"],
                 _parse_level(rec["nitrogen"], "nitrogen", i, required=False),
                 _parse_level(rec["phosphorus"], "phosphorus", i, required=False),
                 _parse_level(rec["potassium"], "potassium", i, required=False))


def _parse_yield(rec: dict, i: int) -> YieldRecord:
    return _wrap(i, YieldRecord,
                 _parse_float(rec["temperature"], "temperature", i),
                 _parse_float(rec["rainfall"], "rainfall", i),
                 _parse_float(rec["ph"], "ph", i),
                 rec["crop"],
                 _parse_float(rec["production"], "production", i))


def _parse_disease(rec: dict, i: int) -> DiseaseRecord:
    point = _wrap(i, GeoPoint, _parse_float(rec["latitude"], "latitude", i),
                  _parse_float(rec["longitude"], "longitude", i))
    return _wrap(i, DiseaseRecord, rec["region"], point,
                 _parse_float(rec["temperature"], "temperature", i),
                 _parse_float(rec["humidity"], "humidity", i),
                 rec["crop"], rec["disease"])


def _make_weather_parser(value_column: str):
    def parse(rec: dict, i: int) -> WeatherRow:
        return _wrap(i, WeatherRow, rec["station"],
                     _parse_int(rec["year"], "year", i),
                     _parse_int(rec["month"], "month", i),
                     _parse_float(rec[value_column], value_column, i))
    return parse


def _weather_range_check(name: str, low: float | None, high: float | None):
    def check(row: WeatherRow, i: int):
        if low is not None and row.value < low:
            raise DataValidationError(f"row {i}: field {name!r} below {low}: {row.value}")
        if high is not None and row.value > high:
            raise DataValidationError(f"row {i}: field {name!r} above {high}: {row.value}")
    return check


@dataclass(frozen=True)
class _Schema:
    name: str
    columns: tuple[str, ...]
    parse: callable
    to_row: callable
    key: callable = None          # duplicate detection
    extra_check: callable = None  # per-row range rules


SCHEMAS: dict[str, _Schema] = {}


def _register(schema: _Schema):
    SCHEMAS[schema.name] = schema


_register(_Schema(
    "soil_nutrition",
    ("division", "district", "sub_district", "latitude", "longitude", "aez_number",
     "aez_name", "met_station", "ph_low", "ph_high", "phosphorus", "potassium",
     "nitrogen"),
    _parse_zone, _zone_to_row,
    key=lambda z: (z.district, z.sub_district),
))

_register(_Schema(
    "crop_nutrition",
    ("crop", "nitrogen", "phosphorus", "potassium"),
    _parse_requirement,
    lambda r: [r.crop, r.nitrogen or "", r.phosphorus or "", r.potassium or ""],
    key=lambda r: r.crop,
))

_register(_Schema(
    "crop_production",
    ("temperature", "rainfall", "ph", "crop", "production"),
    _parse_yield,
    lambda r: [r.temperature, r.rainfall, r.ph, r.crop, r.production],
))

_register(_Schema(
    "crop_disease",
    ("region", "latitude", "longitude", "temperature", "humidity", "crop", "disease"),
    _parse_disease,
    lambda r: [r.region, r.location.lat, r.location.lon, r.temperature,
               r.humidity, r.crop, r.disease],
))

for _name, _col, _lo, _hi in (
    ("temperature_monthly", "avg_temperature", None, None),
    ("rainfall_monthly", "avg_rainfall", 0.0, None),
    ("humidity_monthly", "avg_humidity", 0.0, 100.0),
):
    _register(_Schema(
        _name,
        ("station", "year", "month", _col),
        _make_weather_parser(_col),
        lambda r: [r.station, r.year, r.month, r.value],
        key=lambda r: (r.station, r.year, r.month),
        extra_check=_weather_range_check(_col, _lo, _hi),
    ))


def load_dataset(path, schema: str) -> list:
    """Parse and validate one CSV dataset; row order is preserved.

    Row numbers in errors are 1-based over the data rows (the header is
    row 0).
    """
    if schema not in SCHEMAS:
        raise ValueError(f"unknown schema {schema!r}; expected one of {DATASET_NAMES}")
    spec = SCHEMAS[schema]
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"dataset file not found: {path}")
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataValidationError(f"{path}: empty file, expected header "
                                      f"{','.join(spec.columns)}")
        missing = set(spec.columns) - set(header)
        if missing:
            raise DataValidationError(f"{path}: missing column(s) {sorted(missing)}")
        extra = set(header) - set(spec.columns)
        if extra:
            raise DataValidationError(f"{path}: unexpected column(s) {sorted(extra)}")
        idx = {name: header.index(name) for name in spec.columns}
        records = []
        seen = {}
        for i, row in enumerate(reader, start=1):
            if len(row) != len(header):
                raise DataValidationError(
                    f"row {i}: expected {len(header)} fields, got {len(row)}")
            rec = {name: row[idx[name]] for name in spec.columns}
            record = spec.parse(rec, i)
            if spec.extra_check is not None:
                spec.extra_check(record, i)
            if spec.key is not None:
                key = spec.key(record)
                if key in seen:
                    raise DataValidationError(
                        f"row {i}: duplicate key {key!r} (first seen at row {seen[key]})")
                seen[key] = i
            records.append(record)
    return records


def write_dataset(path, schema: str, records) -> None:
    """Write records as CSV; the exact inverse of load_dataset."""
    spec = SCHEMAS[schema]
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(spec.columns)
        for rec in records:
            writer.writerow([_format_cell(v) for v in spec.to_row(rec)])


def _format_cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)
