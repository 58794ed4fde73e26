"""Dataset schemas, loaders, fixtures, and the synthetic generator."""

from .crops import CROPS, CROP_BY_NAME, DiseaseBox, disease_label, expected_yield
from .fixtures import (
    FIXTURE_STATION,
    FIXTURE_YEAR,
    PRIMARY_CROPS,
    RANGPUR_POINT,
    TARGET_YEAR_WEATHER,
    WALKTHROUGH_PRODUCTION,
    fixture_bundle,
    load_manifest,
    write_fixture_bundle,
)
from .schemas import (
    DATASET_NAMES,
    CropRequirement,
    DataValidationError,
    DiseaseRecord,
    WeatherRow,
    YieldRecord,
    encode_nutrient,
    load_dataset,
    write_dataset,
)
from .synthetic import Bundle, GeneratorConfig, generate_synthetic

__all__ = [
    "Bundle",
    "CROPS",
    "CROP_BY_NAME",
    "CropRequirement",
    "DATASET_NAMES",
    "DataValidationError",
    "DiseaseBox",
    "DiseaseRecord",
    "FIXTURE_STATION",
    "FIXTURE_YEAR",
    "GeneratorConfig",
    "PRIMARY_CROPS",
    "RANGPUR_POINT",
    "TARGET_YEAR_WEATHER",
    "WALKTHROUGH_PRODUCTION",
    "WeatherRow",
    "YieldRecord",
    "disease_label",
    "encode_nutrient",
    "expected_yield",
    "fixture_bundle",
    "generate_synthetic",
    "load_dataset",
    "load_manifest",
    "write_dataset",
    "write_fixture_bundle",
]
