"""Canonical crop registry used by the synthetic generator and fixtures.

Eighteen crops, each with nutrient requirements, a smooth yield response
(Gaussian response surfaces over annual mean temperature, annual rainfall
and soil pH), and rectangular disease-risk boxes in the
(temperature, humidity) plane.  Boxes never overlap within a crop, so a
(crop, temperature, humidity) triple maps to exactly one label.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class DiseaseBox:
    disease: str
    t_low: float
    t_high: float
    h_low: float
    h_high: float

    def contains(self, temperature: float, humidity: float) -> bool:
        return (self.t_low <= temperature <= self.t_high
                and self.h_low <= humidity <= self.h_high)


@dataclass(frozen=True)
class CropSpec:
    name: str
    nitrogen: str
    phosphorus: str
    potassium: str
    base_yield: float       # ton/hectare at ideal conditions
    t_opt: float            # annual mean temperature optimum, deg C
    t_width: float
    r_opt: float            # annual rainfall optimum, mm
    r_width: float
    ph_opt: float
    disease_boxes: tuple[DiseaseBox, ...]


def _box(disease, t_low, t_high, h_low, h_high):
    return DiseaseBox(disease, t_low, t_high, h_low, h_high)


CROPS: tuple[CropSpec, ...] = (
    CropSpec("Banana", "H", "M", "VH", 34.0, 27.0, 7.5, 1900.0, 1350.0, 6.5,
             (_box("Fusarium wilt", 26.0, 32.0, 75.0, 90.0),)),
    CropSpec("Brinjal", "H", "M", "H", 26.0, 26.0, 7.5, 1400.0, 1200.0, 6.2,
             (_box("Fusarium wilt", 25.0, 31.0, 80.0, 92.0),)),
    CropSpec("Cabbage", "H", "M", "H", 44.0, 18.0, 7.5, 1000.0, 1050.0, 6.4,
             (_box("Black rot", 18.0, 26.0, 80.0, 95.0),)),
    CropSpec("Garlic", "M", "M", "M", 11.0, 19.0, 7.5, 900.0, 1050.0, 6.4,
             (_box("Purple blotch", 19.0, 22.0, 85.0, 92.0),)),
    CropSpec("Groundnut", "L", "H", "H", 2.6, 27.0, 7.5, 1100.0, 1050.0, 6.3,
             (_box("Stem rot", 24.0, 30.0, 78.0, 90.0),)),
    CropSpec("Jute", "H", "M", "M", 2.9, 30.0, 7.5, 1800.0, 1350.0, 6.6,
             (_box("Stem rot", 28.0, 34.0, 80.0, 95.0),)),
    CropSpec("Lentil", "VL", "M", "L", 1.3, 22.0, 7.5, 900.0, 1050.0, 6.2,
             (_box("Foot rot", 12.0, 18.0, 76.0, 88.0),)),
    CropSpec("Maize", "H", "H", "M", 8.5, 25.0, 7.5, 1200.0, 1200.0, 6.3,
             (_box("Leaf blight", 22.0, 28.0, 75.0, 88.0),)),
    CropSpec("Mustard", "H", "M", "M", 1.5, 18.0, 7.5, 800.0, 900.0, 6.5,
             (_box("Black rot", 14.0, 21.0, 80.0, 92.0),)),
    CropSpec("Onion", "M", "H", "H", 16.0, 20.0, 7.5, 900.0, 975.0, 6.4,
             (_box("Purple blotch", 20.0, 26.0, 82.0, 92.0),)),
    CropSpec("Papaya", "M", "H", "M", 65.0, 26.0, 8.2, 1700.0, 1350.0, 6.3,
             (_box("Anthracnose", 30.5, 34.0, 70.0, 85.0),)),
    CropSpec("Potato", "H", "M", "VH", 22.0, 17.0, 6.8, 900.0, 975.0, 5.8,
             (_box("Late blight", 10.0, 18.0, 80.0, 95.0),)),
    CropSpec("Rice", "M", "M", "L", 5.8, 27.0, 8.2, 2200.0, 1500.0, 6.0,
             (_box("Blast", 20.0, 23.5, 85.0, 93.0),)),
    CropSpec("Soyabean", "VL", "M", "M", 2.4, 26.0, 7.5, 1300.0, 1200.0, 6.4,
             (_box("Anthracnose", 27.6, 30.0, 82.5, 88.0),)),
    CropSpec("Sugarcane", "M", "H", "M", 78.0, 27.0, 8.2, 1800.0, 1350.0, 6.6,
             (_box("Smut", 28.55, 31.5, 72.0, 86.0),)),
    CropSpec("Tomato", "M", "H", "M", 36.0, 23.0, 7.5, 1200.0, 1200.0, 6.2,
             (_box("Late blight", 24.0, 27.0, 88.0, 95.0),)),
    CropSpec("Watermelon", "M", "M", "H", 31.0, 26.0, 7.5, 1000.0, 1050.0, 6.3,
             (_box("Anthracnose", 24.0, 30.0, 80.0, 90.0),)),
    CropSpec("Wheat", "H", "M", "M", 4.2, 20.0, 6.8, 800.0, 900.0, 6.5,
             (_box("Smut", 15.0, 22.0, 70.0, 85.0),)),
)

CROP_BY_NAME = {c.name: c for c in CROPS}

# No crop may have ambiguous (temperature, humidity) labels.
for _crop in CROPS:
    _boxes = _crop.disease_boxes
    for _i in range(len(_boxes)):
        for _j in range(_i + 1, len(_boxes)):
            _a, _b = _boxes[_i], _boxes[_j]
            if (_a.t_low <= _b.t_high and _b.t_low <= _a.t_high
                    and _a.h_low <= _b.h_high and _b.h_low <= _a.h_high):
                raise AssertionError(f"overlapping disease boxes for {_crop.name}")


def expected_yield(crop: str, temperature: float, rainfall: float, ph: float) -> float:
    """Noise-free production (ton/hectare) from the registry response surface."""
    spec = CROP_BY_NAME[crop]
    t_term = math.exp(-((temperature - spec.t_opt) / spec.t_width) ** 2)
    r_term = math.exp(-((rainfall - spec.r_opt) / spec.r_width) ** 2)
    ph_term = math.exp(-((ph - spec.ph_opt) / 2.2) ** 2)
    return spec.base_yield * t_term * r_term * ph_term


def disease_label(crop: str, temperature: float, humidity: float) -> str:
    """Disease name if (temperature, humidity) falls in one of the crop's
    risk boxes, else "None"."""
    for box in CROP_BY_NAME[crop].disease_boxes:
        if box.contains(temperature, humidity):
            return box.disease
    return "None"
