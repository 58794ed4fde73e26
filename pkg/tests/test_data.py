import numpy as np
import pytest

from cropadvisor.data import (
    CROPS,
    DataValidationError,
    GeneratorConfig,
    disease_label,
    encode_nutrient,
    fixture_bundle,
    generate_synthetic,
    load_dataset,
    write_dataset,
    write_fixture_bundle,
)
from cropadvisor.data.fixtures import TARGET_YEAR_WEATHER, fixture_zones


class TestEncodeNutrient:
    def test_anchors(self):
        assert encode_nutrient("VL") == 1
        assert encode_nutrient("VH") == 5
        assert encode_nutrient("M") == 3

    def test_strictly_monotone(self):
        codes = [encode_nutrient(x) for x in ("VL", "L", "M", "H", "VH")]
        assert codes == sorted(codes)
        assert len(set(codes)) == 5

    def test_unknown_rejected(self):
        with pytest.raises(ValueError):
            encode_nutrient("XXL")


class TestLoadDataset:
    def test_rangpur_soil_fixture(self, tmp_path):
        write_dataset(tmp_path / "soil.csv", "soil_nutrition", fixture_zones())
        zones = load_dataset(tmp_path / "soil.csv", "soil_nutrition")
        rangpur = next(z for z in zones if z.sub_district == "Rangpur")
        assert rangpur.soil.ph_low == 5.6
        assert rangpur.soil.ph_high == 6.5
        assert rangpur.soil.phosphorus == "VH"
        assert rangpur.soil.potassium == "M"

    def test_header_only_file_is_empty_table(self, tmp_path):
        path = tmp_path / "weather.csv"
        path.write_text("station,year,month,avg_temperature\n")
        assert load_dataset(path, "temperature_monthly") == []

    def test_month_13_rejected_with_row_and_field(self, tmp_path):
        path = tmp_path / "weather.csv"
        path.write_text("station,year,month,avg_temperature\n"
                        "Rangpur,2020,6,28.1\n"
                        "Rangpur,2020,13,12.0\n")
        with pytest.raises(DataValidationError, match="row 2") as exc:
            load_dataset(path, "temperature_monthly")
        assert "month" in str(exc.value)

    def test_missing_column_rejected(self, tmp_path):
        path = tmp_path / "weather.csv"
        path.write_text("station,year,avg_temperature\nRangpur,2020,28.1\n")
        with pytest.raises(DataValidationError, match="missing column"):
            load_dataset(path, "temperature_monthly")

    def test_duplicate_key_rejected(self, tmp_path):
        path = tmp_path / "weather.csv"
        path.write_text("station,year,month,avg_temperature\n"
                        "Rangpur,2020,6,28.1\nRangpur,2020,6,28.2\n")
        with pytest.raises(DataValidationError, match="duplicate key"):
            load_dataset(path, "temperature_monthly")

    def test_humidity_range_enforced(self, tmp_path):
        path = tmp_path / "hum.csv"
        path.write_text("station,year,month,avg_humidity\nRangpur,2020,6,101.0\n")
        with pytest.raises(DataValidationError, match="avg_humidity"):
            load_dataset(path, "humidity_monthly")

    def test_negative_rainfall_rejected(self, tmp_path):
        path = tmp_path / "rain.csv"
        path.write_text("station,year,month,avg_rainfall\nRangpur,2020,6,-1.0\n")
        with pytest.raises(DataValidationError, match="avg_rainfall"):
            load_dataset(path, "rainfall_monthly")

    def test_unknown_schema(self, tmp_path):
        with pytest.raises(ValueError, match="unknown schema"):
            load_dataset(tmp_path / "x.csv", "nope")


class TestRoundTrip:
    @pytest.mark.parametrize("name", [
        "soil_nutrition", "crop_nutrition", "crop_production", "crop_disease",
        "temperature_monthly", "rainfall_monthly", "humidity_monthly",
    ])
    def test_write_then_load_is_identity(self, name, tmp_path):
        bundle = generate_synthetic(3, GeneratorConfig(
            years=50, yield_rows=60, disease_rows=60))
        records = bundle.dataset(name)
        path = tmp_path / f"{name}.csv"
        write_dataset(path, name, records)
        assert load_dataset(path, name) == records


class TestGenerator:
    def test_same_seed_byte_identical(self, tmp_path):
        cfg = GeneratorConfig(years=50, yield_rows=80, disease_rows=80)
        generate_synthetic(11, cfg).write(tmp_path / "a")
        generate_synthetic(11, cfg).write(tmp_path / "b")
        for f in sorted((tmp_path / "a").iterdir()):
            assert f.read_bytes() == (tmp_path / "b" / f.name).read_bytes(), f.name

    def test_different_seed_differs(self, tmp_path):
        cfg = GeneratorConfig(years=50, yield_rows=80, disease_rows=80)
        a = generate_synthetic(1, cfg)
        b = generate_synthetic(2, cfg)
        assert a.yield_records != b.yield_records

    def test_january_cooler_than_july_every_station(self):
        bundle = generate_synthetic(7, GeneratorConfig(
            years=50, yield_rows=60, disease_rows=60, stations=3))
        by_station = {}
        for row in bundle.temperature:
            by_station.setdefault(row.station, {}).setdefault(row.month, []).append(row.value)
        assert len(by_station) == 3
        for station, months in by_station.items():
            jan = np.mean(months[1])
            jul = np.mean(months[7])
            assert jan < jul, station

    def test_rainfall_zero_heavy_but_nonnegative(self):
        bundle = generate_synthetic(7, GeneratorConfig(
            years=50, yield_rows=60, disease_rows=60))
        values = [r.value for r in bundle.rainfall]
        assert min(values) >= 0.0
        assert sum(1 for v in values if v == 0.0) > len(values) * 0.05

    def test_disease_rows_follow_risk_boxes_exhaustively(self):
        bundle = generate_synthetic(5, GeneratorConfig(
            years=50, yield_rows=60, disease_rows=600))
        for rec in bundle.disease_records:
            assert rec.disease == disease_label(rec.crop, rec.temperature, rec.humidity)

    def test_bundle_passes_all_schema_validation(self, tmp_path):
        manifest = generate_synthetic(9, GeneratorConfig(
            years=50, yield_rows=60, disease_rows=60)).write(tmp_path)
        import json
        doc = json.loads(manifest.read_text())
        for name, rel in doc["datasets"].items():
            records = load_dataset(tmp_path / rel, name)
            assert records, name

    def test_config_minimums_enforced(self):
        with pytest.raises(ValueError, match="50 years"):
            generate_synthetic(0, GeneratorConfig(years=30))
        with pytest.raises(ValueError):
            generate_synthetic(0, GeneratorConfig(yield_rows=10))


class TestCropRegistry:
    def test_eighteen_crops(self):
        assert len(CROPS) == 18
        assert len({c.name for c in CROPS}) == 18

    def test_walkthrough_disease_boxes_fire_on_expected_months(self):
        # per-month labels for the three disease-carrying primary crops
        lentil = {m for m, (t, _, h) in enumerate(TARGET_YEAR_WEATHER, start=1)
                  if disease_label("Lentil", t, h) != "None"}
        soyabean = {m for m, (t, _, h) in enumerate(TARGET_YEAR_WEATHER, start=1)
                    if disease_label("Soyabean", t, h) != "None"}
        sugarcane = {m for m, (t, _, h) in enumerate(TARGET_YEAR_WEATHER, start=1)
                     if disease_label("Sugarcane", t, h) != "None"}
        assert lentil == {1}
        assert soyabean == {7, 8, 9}
        assert sugarcane == {6}
        for crop in ("Garlic", "Papaya", "Rice", "Tomato"):
            for t, _, h in TARGET_YEAR_WEATHER:
                assert disease_label(crop, t, h) == "None", crop


class TestFixtureBundle:
    def test_writes_and_validates(self, tmp_path):
        manifest = write_fixture_bundle(tmp_path)
        import json
        doc = json.loads(manifest.read_text())
        zones = load_dataset(tmp_path / doc["datasets"]["soil_nutrition"], "soil_nutrition")
        assert any(z.sub_district == "Rangpur" for z in zones)
        temp = load_dataset(tmp_path / doc["datasets"]["temperature_monthly"],
                            "temperature_monthly")
        rangpur_2023 = sorted((r.month, r.value) for r in temp
                              if r.station == "Rangpur" and r.year == 2023)
        assert rangpur_2023 == [(m + 1, t) for m, (t, _, _) in
                                enumerate(TARGET_YEAR_WEATHER)]

    def test_deterministic(self):
        a = fixture_bundle()
        b = fixture_bundle()
        assert a.disease_records == b.disease_records
        assert a.yield_records == b.yield_records
