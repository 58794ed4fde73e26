"""Deterministic synthetic seven-dataset bundle.

Weather series are seasonal sinusoids plus trend plus AR(1) noise; yield
rows come from the registry response surfaces with bounded multiplicative
noise; disease rows are labeled by the registry risk boxes.  Identical
seeds give byte-identical bundles.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..geo import NUTRIENT_LEVELS, GeoPoint, SoilProfile, ZoneRecord
from .crops import CROPS, disease_label, expected_yield
from .schemas import (
    CropRequirement,
    DiseaseRecord,
    WeatherRow,
    YieldRecord,
    write_dataset,
)

_DIVISIONS = (
    ("Rangpur", "Rangpur", 25.74, 89.27),
    ("Dhaka", "Dhaka", 23.81, 90.41),
    ("Chattogram", "Chattogram", 22.36, 91.78),
    ("Khulna", "Khulna", 22.85, 89.54),
    ("Rajshahi", "Rajshahi", 24.37, 88.60),
    ("Sylhet", "Sylhet", 24.89, 91.87),
    ("Barishal", "Barishal", 22.70, 90.35),
    ("Mymensingh", "Mymensingh", 24.75, 90.42),
    ("Rangpur", "Dinajpur", 25.62, 88.64),
    ("Rajshahi", "Bogura", 24.85, 89.37),
    ("Dhaka", "Tangail", 24.25, 89.92),
    ("Chattogram", "Cumilla", 23.46, 91.18),
)

_AEZ_NAMES = (
    "Tista Meander Floodplain",
    "Karatoya-Bangali Floodplain",
    "Ganges Tidal Floodplain",
    "High Barind Tract",
    "Old Brahmaputra Floodplain",
    "Madhupur Tract",
    "Eastern Surma-Kushiyara Floodplain",
    "Chittagong Coastal Plain",
)


@dataclass(frozen=True)
class GeneratorConfig:
    years: int = 55
    end_year: int = 2022
    stations: int = 3
    zones: int = 10
    yield_rows: int = 2000
    disease_rows: int = 1800
    weather_noise: float = 1.0
    yield_noise: float = 0.03
    # share of disease rows drawn from risk-box interiors (for class balance)
    disease_box_fraction: float = 0.45

    def validate(self):
        if self.years < 50:
            raise ValueError(f"need at least 50 years of weather history, got {self.years}")
        if self.stations < 1 or self.zones < self.stations:
            raise ValueError("need at least one station and zones >= stations")
        if self.yield_rows < 50 or self.disease_rows < 50:
            raise ValueError("need at least 50 yield and disease rows")
        if not 0 <= self.disease_box_fraction <= 1:
            raise ValueError("disease_box_fraction must be in [0, 1]")


@dataclass
class Bundle:
    """All seven datasets, in memory."""

    zones: list = field(default_factory=list)
    crop_requirements: list = field(default_factory=list)
    yield_records: list = field(default_factory=list)
    disease_records: list = field(default_factory=list)
    temperature: list = field(default_factory=list)
    rainfall: list = field(default_factory=list)
    humidity: list = field(default_factory=list)

    def dataset(self, name: str) -> list:
        return {
            "soil_nutrition": self.zones,
            "crop_nutrition": self.crop_requirements,
            "crop_production": self.yield_records,
            "crop_disease": self.disease_records,
            "temperature_monthly": self.temperature,
            "rainfall_monthly": self.rainfall,
            "humidity_monthly": self.humidity,
        }[name]

    def write(self, directory) -> Path:
        """Write the seven CSVs plus a manifest; returns the manifest path."""
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        paths = {}
        for name in ("soil_nutrition", "crop_nutrition", "crop_production",
                     "crop_disease", "temperature_monthly", "rainfall_monthly",
                     "humidity_monthly"):
            filename = f"{name}.csv"
            write_dataset(directory / filename, name, self.dataset(name))
            paths[name] = filename
        manifest = {"datasets": paths, "models": {"disease": None, "yield": None}}
        manifest_path = directory / "bundle.json"
        manifest_path.write_text(json.dumps(manifest, sort_keys=True, indent=1))
        return manifest_path


def _seasonal_weather(rng, months, base, amplitude, trend_per_year, noise, rho=0.6):
    """Sinusoidal seasonality (northern hemisphere: minimum in January)
    plus linear trend plus AR(1) noise."""
    t = np.arange(months)
    month_phase = -np.cos(2.0 * np.pi * (t % 12) / 12.0)
    eps = rng.normal(0.0, noise, months)
    ar = np.empty(months)
    prev = 0.0
    for i in range(months):
        prev = rho * prev + eps[i]
        ar[i] = prev
    return base + amplitude * month_phase + trend_per_year * (t / 12.0) + ar


def generate_synthetic(seed: int, config: GeneratorConfig | None = None) -> Bundle:
    config = config or GeneratorConfig()
    config.validate()
    rng = np.random.default_rng(seed)
    bundle = Bundle()

    # zones and stations
    station_names = []
    for z in range(config.zones):
        division, district, lat0, lon0 = _DIVISIONS[z % len(_DIVISIONS)]
        sub_district = f"{district} Sadar" if z < len(_DIVISIONS) else f"{district}-{z}"
        lat = float(np.clip(lat0 + rng.uniform(-0.35, 0.35), 20.5, 26.6))
        lon = float(np.clip(lon0 + rng.uniform(-0.35, 0.35), 88.0, 92.7))
        station = f"{district} Station" if z < config.stations else \
            station_names[z % config.stations]
        if z < config.stations:
            station_names.append(station)
        ph_low = float(rng.uniform(4.6, 6.9))
        soil = SoilProfile(
            ph_low=round(ph_low, 1),
            ph_high=round(ph_low + rng.uniform(0.4, 1.4), 1),
            phosphorus=str(rng.choice(NUTRIENT_LEVELS)),
            potassium=str(rng.choice(NUTRIENT_LEVELS)),
            nitrogen=str(rng.choice(NUTRIENT_LEVELS)),
        )
        bundle.zones.append(ZoneRecord(
            division=division, district=district, sub_district=sub_district,
            location=GeoPoint(lat, lon), aez_number=int(rng.integers(1, 31)),
            aez_name=str(rng.choice(_AEZ_NAMES)), met_station=station, soil=soil))

    # crop nutrition straight from the registry
    for crop in CROPS:
        bundle.crop_requirements.append(CropRequirement(
            crop.name, crop.nitrogen, crop.phosphorus, crop.potassium))

    # monthly weather per station
    months = config.years * 12
    start_year = config.end_year - config.years + 1
    for station in station_names:
        temp = _seasonal_weather(rng, months, base=float(rng.uniform(24.0, 26.5)),
                                 amplitude=float(rng.uniform(5.0, 7.0)),
                                 trend_per_year=float(rng.uniform(0.0, 0.02)),
                                 noise=config.weather_noise)
        monsoon = np.maximum(0.0, -np.cos(2.0 * np.pi * ((np.arange(months) % 12) - 0.5) / 12.0)) ** 3
        rain = np.maximum(0.0, monsoon * float(rng.uniform(380.0, 520.0))
                          + rng.normal(0.0, 18.0, months) * (0.15 + monsoon))
        hum = np.clip(_seasonal_weather(rng, months, base=float(rng.uniform(75.0, 80.0)),
                                        amplitude=4.0, trend_per_year=0.0,
                                        noise=2.0), 0.0, 100.0)
        for i in range(months):
            year, month = start_year + i // 12, i % 12 + 1
            bundle.temperature.append(WeatherRow(station, year, month, round(float(temp[i]), 2)))
            bundle.rainfall.append(WeatherRow(station, year, month, round(float(rain[i]), 1)))
            bundle.humidity.append(WeatherRow(station, year, month, round(float(hum[i]), 1)))

    # crop production observations
    crop_names = [c.name for c in CROPS]
    for _ in range(config.yield_rows):
        crop = str(rng.choice(crop_names))
        t = float(rng.uniform(16.0, 30.0))
        r = float(rng.uniform(600.0, 3200.0))
        ph = float(rng.uniform(4.8, 7.5))
        production = expected_yield(crop, t, r, ph) \
            * (1.0 + float(rng.uniform(-config.yield_noise, config.yield_noise)))
        bundle.yield_records.append(YieldRecord(
            round(t, 2), round(r, 1), round(ph, 2), crop, round(max(0.0, production), 4)))

    # crop disease observations: risk rows come from box interiors, healthy
    # rows from conditions no crop considers risky, mimicking a survey of
    # clear-cut cases
    all_boxes = [box for spec in CROPS for box in spec.disease_boxes]

    def sample_conditions(spec):
        boxes = spec.disease_boxes
        if boxes and rng.uniform() < config.disease_box_fraction:
            box = boxes[int(rng.integers(len(boxes)))]
            t_pad = max(0.2, 0.15 * (box.t_high - box.t_low))
            h_pad = max(0.6, 0.15 * (box.h_high - box.h_low))
            return (float(rng.uniform(box.t_low + t_pad, box.t_high - t_pad)),
                    float(rng.uniform(box.h_low + h_pad, box.h_high - h_pad)))
        for _attempt in range(128):
            t = float(rng.uniform(10.0, 35.0))
            h = float(rng.uniform(55.0, 97.0))
            near_a_box = any(
                box.t_low - 0.8 <= t <= box.t_high + 0.8
                and box.h_low - 2.5 <= h <= box.h_high + 2.5
                for box in all_boxes)
            if not near_a_box:
                return t, h
        return t, h

    for _ in range(config.disease_rows):
        crop_spec = CROPS[int(rng.integers(len(CROPS)))]
        t, h = sample_conditions(crop_spec)
        t, h = round(t, 2), round(h, 1)
        zone = bundle.zones[int(rng.integers(len(bundle.zones)))]
        lat = float(np.clip(zone.location.lat + rng.uniform(-0.2, 0.2), -90.0, 90.0))
        lon = float(np.clip(zone.location.lon + rng.uniform(-0.2, 0.2), -180.0, 180.0))
        bundle.disease_records.append(DiseaseRecord(
            zone.sub_district, GeoPoint(round(lat, 5), round(lon, 5)),
            t, h, crop_spec.name, disease_label(crop_spec.name, t, h)))

    return bundle
