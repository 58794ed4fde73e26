"""Crop decision support: zone matching, weather forecasting, disease and
yield prediction, ranked crop recommendations."""

__version__ = "0.1.0"

from .geo import GeoPoint, SoilProfile, ZoneRecord, haversine_distance, nearest_zone
from .metrics import classification_report, regression_report
from .pipeline import (
    CropAssessment,
    MonthlyWeather,
    PipelineError,
    Recommendation,
    forecast_weather,
    load_bundle,
    predict_diseases,
    predict_yields,
    primary_crops,
    recommend,
)
from .timeseries import (
    FittedSarimax,
    ForecastResult,
    SarimaxOrder,
    TimeSeries,
    default_order_grid,
    difference,
    fit,
    forecast,
    log_likelihood,
    select_order,
    simulate_sarima,
)

__all__ = [
    "CropAssessment",
    "FittedSarimax",
    "ForecastResult",
    "GeoPoint",
    "MonthlyWeather",
    "PipelineError",
    "Recommendation",
    "SarimaxOrder",
    "SoilProfile",
    "TimeSeries",
    "ZoneRecord",
    "__version__",
    "classification_report",
    "default_order_grid",
    "difference",
    "fit",
    "forecast",
    "forecast_weather",
    "haversine_distance",
    "load_bundle",
    "log_likelihood",
    "nearest_zone",
    "predict_diseases",
    "predict_yields",
    "primary_crops",
    "recommend",
    "regression_report",
    "select_order",
    "simulate_sarima",
]
