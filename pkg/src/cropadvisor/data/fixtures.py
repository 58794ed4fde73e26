"""The Rangpur walkthrough bundle.

A small, fully deterministic seven-dataset bundle whose pipeline run lands
on known values: the Rangpur soil profile, a seven-crop primary list, the
three disease assignments (Foot rot / Anthracnose / Smut) and the ranked
production list headed by Papaya.

The weather tables carry the target-year monthly values as observed rows,
so downstream stages consume them exactly instead of refitting a model.
The disease table embeds each primary crop's twelve monthly observations
with their box labels, which the classifier reproduces at those points.
The production table gives every crop a tight condition cluster with a
single production value per cluster, so the regression tree's leaves are
pure and predictions land on the cluster values exactly.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from ..geo import GeoPoint, SoilProfile, ZoneRecord
from .crops import CROP_BY_NAME, disease_label
from .schemas import CropRequirement, DiseaseRecord, WeatherRow, YieldRecord
from .synthetic import Bundle, _seasonal_weather

FIXTURE_YEAR = 2023
FIXTURE_STATION = "Rangpur"
RANGPUR_POINT = GeoPoint(25.74058, 89.261139)

# month -> (avg temperature degC, rainfall mm, humidity %) for the target year
TARGET_YEAR_WEATHER = (
    (15.8, 0.0, 82.0),
    (20.5, 10.0, 75.0),
    (23.7, 24.0, 68.0),
    (26.6, 94.0, 77.0),
    (27.4, 232.0, 82.0),
    (29.0, 289.0, 80.0),
    (28.4, 542.0, 83.0),
    (28.4, 572.0, 85.0),
    (28.0, 299.0, 84.0),
    (27.1, 116.0, 84.0),
    (22.6, 3.0, 78.0),
    (18.4, 0.0, 80.0),
)

# production (ton/hectare) per primary crop at the walkthrough conditions
WALKTHROUGH_PRODUCTION = {
    "Papaya": 134.24,
    "Sugarcane": 106.79,
    "Tomato": 35.17,
    "Garlic": 12.79,
    "Soyabean": 11.44,
    "Rice": 7.99,
    "Lentil": 0.85,
}

PRIMARY_CROPS = ("Garlic", "Lentil", "Papaya", "Rice", "Soyabean", "Sugarcane", "Tomato")

_ZONES = (
    # division, district, sub_district, lat, lon, aez#, aez name, station,
    # ph_low, ph_high, P, K, N
    ("Rangpur", "Rangpur", "Rangpur", 25.74058, 89.261139, 3,
     "Tista Meander Floodplain", "Rangpur", 5.6, 6.5, "VH", "M", "M"),
    ("Dhaka", "Dhaka", "Dhaka", 23.8103, 90.4125, 28,
     "Madhupur Tract", "Dhaka", 6.0, 6.8, "M", "H", "M"),
    ("Chattogram", "Chattogram", "Chattogram", 22.3569, 91.7832, 29,
     "Northern and Eastern Hills", "Chattogram", 4.9, 5.9, "L", "M", "L"),
    ("Sylhet", "Sylhet", "Sylhet", 24.8949, 91.8687, 20,
     "Eastern Surma-Kushiyara Floodplain", "Sylhet", 5.2, 6.2, "M", "M", "H"),
    ("Rajshahi", "Rajshahi", "Rajshahi", 24.3745, 88.6042, 11,
     "High Barind Tract", "Rajshahi", 6.2, 7.2, "H", "H", "M"),
    ("Khulna", "Khulna", "Khulna", 22.8456, 89.5403, 13,
     "Ganges Tidal Floodplain", "Khulna", 6.5, 7.5, "M", "VH", "M"),
    ("Barishal", "Barishal", "Barishal", 22.7010, 90.3535, 13,
     "Ganges Tidal Floodplain", "Barishal", 6.3, 7.3, "H", "M", "M"),
    ("Mymensingh", "Mymensingh", "Mymensingh", 24.7471, 90.4203, 9,
     "Old Brahmaputra Floodplain", "Mymensingh", 5.8, 6.6, "M", "M", "H"),
)

# far-from-walkthrough condition clusters for the eleven non-primary crops:
# (annual mean temperature, annual rainfall, ph, production)
_OTHER_CROP_ROWS = {
    "Banana": (31.2, 2600.0, 6.5, 28.40),
    "Brinjal": (31.9, 2900.0, 6.1, 21.75),
    "Cabbage": (12.3, 700.0, 6.4, 38.60),
    "Groundnut": (12.9, 850.0, 6.3, 2.05),
    "Jute": (32.6, 3100.0, 6.6, 2.35),
    "Maize": (13.6, 950.0, 6.2, 6.90),
    "Mustard": (14.4, 760.0, 6.5, 1.20),
    "Onion": (15.1, 820.0, 6.4, 13.30),
    "Potato": (12.0, 640.0, 5.8, 18.25),
    "Watermelon": (30.5, 1050.0, 6.3, 24.10),
    "Wheat": (15.8, 700.0, 6.5, 3.45),
}


def fixture_zones() -> list[ZoneRecord]:
    zones = []
    for (division, district, sub_district, lat, lon, aez_number, aez_name,
         station, ph_low, ph_high, p, k, n) in _ZONES:
        zones.append(ZoneRecord(
            division=division, district=district, sub_district=sub_district,
            location=GeoPoint(lat, lon), aez_number=aez_number, aez_name=aez_name,
            met_station=station,
            soil=SoilProfile(ph_low, ph_high, p, k, n)))
    return zones


def fixture_crop_requirements() -> list[CropRequirement]:
    return [CropRequirement(c.name, c.nitrogen, c.phosphorus, c.potassium)
            for c in sorted(CROP_BY_NAME.values(), key=lambda c: c.name)]


def fixture_weather() -> tuple[list[WeatherRow], list[WeatherRow], list[WeatherRow]]:
    """Fifty years of history for every fixture station through the target
    year; the Rangpur target-year rows are the walkthrough values."""
    temperature, rainfall, humidity = [], [], []
    start_year = FIXTURE_YEAR - 49
    months = 50 * 12
    for z, row in enumerate(_ZONES):
        station = row[7]
        rng = np.random.default_rng([905, z])
        temp = _seasonal_weather(rng, months, base=25.0 + 0.3 * z, amplitude=6.0,
                                 trend_per_year=0.01, noise=0.9)
        monsoon = np.maximum(
            0.0, -np.cos(2.0 * np.pi * ((np.arange(months) % 12) - 0.5) / 12.0)) ** 3
        rain = np.maximum(0.0, monsoon * 480.0 + rng.normal(0.0, 16.0, months)
                          * (0.15 + monsoon))
        hum = np.clip(_seasonal_weather(rng, months, base=79.0, amplitude=4.0,
                                        trend_per_year=0.0, noise=2.0), 0.0, 100.0)
        for i in range(months):
            year, month = start_year + i // 12, i % 12 + 1
            if station == FIXTURE_STATION and year == FIXTURE_YEAR:
                t_val, r_val, h_val = TARGET_YEAR_WEATHER[month - 1]
            else:
                t_val = round(float(temp[i]), 1)
                r_val = round(float(rain[i]), 0)
                h_val = round(float(hum[i]), 0)
            temperature.append(WeatherRow(station, year, month, t_val))
            rainfall.append(WeatherRow(station, year, month, r_val))
            humidity.append(WeatherRow(station, year, month, h_val))
    return temperature, rainfall, humidity


def walkthrough_yield_features() -> tuple[float, float, float]:
    """(annual mean temperature, annual rainfall, soil pH midpoint) implied
    by the target-year weather and the Rangpur soil profile."""
    mean_t = sum(t for t, _, _ in TARGET_YEAR_WEATHER) / 12.0
    total_r = sum(r for _, r, _ in TARGET_YEAR_WEATHER)
    return mean_t, total_r, (5.6 + 6.5) / 2.0


def fixture_yield_records() -> list[YieldRecord]:
    mean_t, total_r, ph_mid = walkthrough_yield_features()
    records = []
    jitter = ((-0.6, -80.0, -0.15), (0.0, 0.0, 0.0), (0.6, 80.0, 0.15))
    for crop in PRIMARY_CROPS:
        production = WALKTHROUGH_PRODUCTION[crop]
        for dt, dr, dph in jitter:
            records.append(YieldRecord(round(mean_t + dt, 4), round(total_r + dr, 1),
                                       round(ph_mid + dph, 3), crop, production))
    for crop, (t, r, ph, production) in sorted(_OTHER_CROP_ROWS.items()):
        for dt, dr, dph in jitter:
            records.append(YieldRecord(round(t + dt, 4), round(r + dr, 1),
                                       round(ph + dph, 3), crop, production))
    return records


def fixture_disease_records() -> list[DiseaseRecord]:
    """Survey-style observations dense enough for the classifier to carry
    the box labels at the twelve monthly conditions.

    Every label comes from the risk-box function; the sampling just
    concentrates observations around the monthly conditions and inside the
    boxes, and leaves a thin unsampled band along box boundaries.
    """
    records = []
    zones = fixture_zones()
    rng = np.random.default_rng(906)

    def zone_site():
        zone = zones[int(rng.integers(len(zones)))]
        lat = round(zone.location.lat + float(rng.uniform(-0.15, 0.15)), 5)
        lon = round(zone.location.lon + float(rng.uniform(-0.15, 0.15)), 5)
        return zone.sub_district, GeoPoint(lat, lon)

    def add(crop, t, h, region=None, point=None):
        t, h = round(float(t), 2), round(float(np.clip(h, 0.0, 100.0)), 1)
        if region is None:
            region, point = zone_site()
        records.append(DiseaseRecord(region, point, t, h, crop,
                                     disease_label(crop, t, h)))

    for crop in PRIMARY_CROPS:
        boxes = CROP_BY_NAME[crop].disease_boxes
        # the twelve monthly conditions themselves, observed at Rangpur
        for t_val, _, h_val in TARGET_YEAR_WEATHER:
            add(crop, t_val, h_val, "Rangpur", RANGPUR_POINT)
        # close-by repeat observations around each monthly condition;
        # risk months get a denser cluster
        for t_val, _, h_val in TARGET_YEAR_WEATHER:
            in_box = disease_label(crop, t_val, h_val) != "None"
            repeats, dt, dh = (20, 0.25, 0.8) if in_box else (6, 0.35, 1.0)
            for _ in range(repeats):
                add(crop, t_val + rng.uniform(-dt, dt), h_val + rng.uniform(-dh, dh))
        # solid interiors for each risk box
        for box in boxes:
            hits_a_month = any(box.contains(t, h) for t, _, h in TARGET_YEAR_WEATHER)
            t_pad = 0.12 * (box.t_high - box.t_low)
            h_pad = 0.12 * (box.h_high - box.h_low)
            for _ in range(60 if hits_a_month else 16):
                add(crop, rng.uniform(box.t_low + t_pad, box.t_high - t_pad),
                    rng.uniform(box.h_low + h_pad, box.h_high - h_pad))
        # healthy-condition observations away from box boundaries
        added = 0
        while added < 30:
            t = float(rng.uniform(10.0, 34.0))
            h = float(rng.uniform(58.0, 96.0))
            near_boundary = any(
                box.t_low - 0.8 <= t <= box.t_high + 0.8
                and box.h_low - 2.0 <= h <= box.h_high + 2.0
                and not box.contains(t, h)
                for box in boxes)
            if near_boundary:
                continue
            add(crop, t, h)
            added += 1
    return records


def fixture_bundle() -> Bundle:
    temperature, rainfall, humidity = fixture_weather()
    return Bundle(
        zones=fixture_zones(),
        crop_requirements=fixture_crop_requirements(),
        yield_records=fixture_yield_records(),
        disease_records=fixture_disease_records(),
        temperature=temperature,
        rainfall=rainfall,
        humidity=humidity,
    )


def write_fixture_bundle(directory) -> Path:
    """Write the walkthrough bundle CSVs plus manifest; returns the manifest path."""
    return fixture_bundle().write(directory)


def load_manifest(manifest_path) -> dict:
    manifest_path = Path(manifest_path)
    doc = json.loads(manifest_path.read_text())
    if "datasets" not in doc:
        raise ValueError(f"{manifest_path}: manifest missing 'datasets'")
    return doc
