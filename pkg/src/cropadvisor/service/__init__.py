"""HTTP service exposing the recommendation pipeline."""

from .app import ApiException, ForecastCache, create_app
from .config import ServiceConfig
from .schemas import (
    ApiErrorBody,
    CropAssessmentOut,
    MonthlyWeatherOut,
    RecommendRequest,
    RecommendationOut,
    SoilProfileOut,
    ZoneOut,
)

__all__ = [
    "ApiErrorBody",
    "ApiException",
    "CropAssessmentOut",
    "ForecastCache",
    "MonthlyWeatherOut",
    "RecommendRequest",
    "RecommendationOut",
    "ServiceConfig",
    "SoilProfileOut",
    "ZoneOut",
    "create_app",
]
