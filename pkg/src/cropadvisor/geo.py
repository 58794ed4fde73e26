"""Great-circle distance and nearest agro-meteorological zone lookup."""

from __future__ import annotations

import math
from dataclasses import dataclass

EARTH_RADIUS_KM = 6371.0

# Ordinal soil/crop nutrient scale, lowest to highest.
NUTRIENT_LEVELS = ("VL", "L", "M", "H", "VH")


@dataclass(frozen=True)
class GeoPoint:
    """A latitude/longitude pair in degrees."""

    lat: float
    lon: float

    def __post_init__(self):
        if not (math.isfinite(self.lat) and math.isfinite(self.lon)):
            raise ValueError(f"coordinates must be finite, got ({self.lat}, {self.lon})")
        if not -90.0 <= self.lat <= 90.0:
            raise ValueError(f"latitude {self.lat} outside [-90, 90]")
        if not -180.0 <= self.lon <= 180.0:
            raise ValueError(f"longitude {self.lon} outside [-180, 180]")


@dataclass(frozen=True)
class SoilProfile:
    """Soil pH range plus ordinal nutrient levels for one zone."""

    ph_low: float
    ph_high: float
    phosphorus: str
    potassium: str
    nitrogen: str | None = None

    def __post_init__(self):
        if not 0.0 < self.ph_low <= self.ph_high < 14.0:
            raise ValueError(f"invalid pH range {self.ph_low}-{self.ph_high}")
        for name, level in (("phosphorus", self.phosphorus),
                            ("potassium", self.potassium),
                            ("nitrogen", self.nitrogen)):
            if level is not None and level not in NUTRIENT_LEVELS:
                raise ValueError(f"{name} level {level!r} not in {NUTRIENT_LEVELS}")

    @property
    def ph_midpoint(self) -> float:
        return 0.5 * (self.ph_low + self.ph_high)


@dataclass(frozen=True)
class ZoneRecord:
    """One agro-meteorological zone row: location, admin names, soil."""

    division: str
    district: str
    sub_district: str
    location: GeoPoint
    aez_number: int
    aez_name: str
    met_station: str
    soil: SoilProfile

    def __post_init__(self):
        if self.aez_number < 1:
            raise ValueError(f"aez_number must be >= 1, got {self.aez_number}")
        if not self.met_station:
            raise ValueError("met_station must be non-empty")


def haversine_distance(p1: GeoPoint, p2: GeoPoint, radius_km: float = EARTH_RADIUS_KM) -> float:
    """Great-circle distance in km between two points on a sphere.

    Half the squared chord length between the points is computed from the
    latitude/longitude deltas, then converted to an angular distance with
    atan2 and scaled by the sphere radius.
    """
    if not math.isfinite(radius_km) or radius_km <= 0.0:
        raise ValueError(f"radius_km must be positive and finite, got {radius_km}")
    phi1 = math.radians(p1.lat)
    phi2 = math.radians(p2.lat)
    dphi = math.radians(p2.lat - p1.lat)
    dlam = math.radians(p2.lon - p1.lon)
    a = math.sin(dphi / 2.0) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlam / 2.0) ** 2
    # Guard tiny negative / >1 drift from rounding before the square roots.
    a = min(1.0, max(0.0, a))
    c = 2.0 * math.atan2(math.sqrt(a), math.sqrt(1.0 - a))
    return radius_km * c


def nearest_zone(p: GeoPoint, zones: list[ZoneRecord],
                 radius_km: float = EARTH_RADIUS_KM) -> ZoneRecord:
    """Zone record closest to ``p``; exact ties go to the alphabetically
    first sub-district so the result never depends on table order."""
    if not zones:
        raise ValueError("zone table is empty")
    return min(zones, key=lambda z: (haversine_distance(p, z.location, radius_km),
                                     z.sub_district))
