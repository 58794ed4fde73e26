"""Pydantic request/response models for the HTTP API."""

from __future__ import annotations

from pydantic import BaseModel, Field

from ..geo import SoilProfile, ZoneRecord
from ..pipeline import MonthlyWeather, Recommendation

# the documented closed set of machine-readable error codes
ERROR_CODES = (
    "bundle_not_ready",
    "invalid_coordinates",
    "unknown_station",
    "year_out_of_range",
    "validation_error",
    "pipeline_error",
    "not_found",
    "internal_error",
)


class ApiErrorBody(BaseModel):
    code: str
    message: str
    stage: str | None = None


class SoilProfileOut(BaseModel):
    ph_low: float
    ph_high: float
    phosphorus: str
    potassium: str
    nitrogen: str | None = None

    @classmethod
    def from_domain(cls, soil: SoilProfile) -> "SoilProfileOut":
        return cls(ph_low=soil.ph_low, ph_high=soil.ph_high,
                   phosphorus=soil.phosphorus, potassium=soil.potassium,
                   nitrogen=soil.nitrogen)


class ZoneOut(BaseModel):
    division: str
    district: str
    sub_district: str
    latitude: float
    longitude: float
    aez_number: int
    aez_name: str
    met_station: str
    soil: SoilProfileOut

    @classmethod
    def from_domain(cls, zone: ZoneRecord) -> "ZoneOut":
        return cls(division=zone.division, district=zone.district,
                   sub_district=zone.sub_district, latitude=zone.location.lat,
                   longitude=zone.location.lon, aez_number=zone.aez_number,
                   aez_name=zone.aez_name, met_station=zone.met_station,
                   soil=SoilProfileOut.from_domain(zone.soil))


class MonthlyWeatherOut(BaseModel):
    temperature: list[float] = Field(min_length=12, max_length=12)
    rainfall: list[float] = Field(min_length=12, max_length=12)
    humidity: list[float] = Field(min_length=12, max_length=12)

    @classmethod
    def from_domain(cls, weather: MonthlyWeather) -> "MonthlyWeatherOut":
        return cls(temperature=list(weather.temperature),
                   rainfall=list(weather.rainfall),
                   humidity=list(weather.humidity))


class CropAssessmentOut(BaseModel):
    crop: str
    predicted_production: float
    diseases: list[str]
    disease_count: int

    @classmethod
    def from_domain(cls, assessment) -> "CropAssessmentOut":
        return cls(crop=assessment.crop,
                   predicted_production=assessment.predicted_production,
                   diseases=list(assessment.diseases),
                   disease_count=assessment.disease_count)


class RecommendationOut(BaseModel):
    zone: ZoneOut
    weather: MonthlyWeatherOut
    ranked: list[CropAssessmentOut]

    @classmethod
    def from_domain(cls, rec: Recommendation) -> "RecommendationOut":
        return cls(zone=ZoneOut.from_domain(rec.zone),
                   weather=MonthlyWeatherOut.from_domain(rec.weather),
                   ranked=[CropAssessmentOut.from_domain(a) for a in rec.ranked])


class RecommendRequest(BaseModel):
    lat: float
    lon: float
    year: int
    exclude_crops: list[str] = Field(default_factory=list)
