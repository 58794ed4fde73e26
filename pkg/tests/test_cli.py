import json
from pathlib import Path

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from cropadvisor.cli import main


@pytest.fixture(scope="module")
def runner():
    return CliRunner()


@pytest.fixture(scope="module")
def bundle_with_models(runner, walkthrough_dir):
    """Fixture bundle dir with both models trained once and a manifest that
    points at them, so later commands load instead of retraining."""
    base = Path(walkthrough_dir).parent
    for target, name in (("disease", "disease_model.json"), ("yield", "yield_model.json")):
        result = runner.invoke(main, [
            "train", "--bundle", str(walkthrough_dir), "--target", target,
            "--seed", "0", "--out", str(base / name)])
        assert result.exit_code == 0, result.output
    doc = json.loads(Path(walkthrough_dir).read_text())
    doc["models"] = {"disease": "disease_model.json", "yield": "yield_model.json"}
    manifest = base / "bundle_with_models.json"
    manifest.write_text(json.dumps(doc, sort_keys=True, indent=1))
    return manifest


@pytest.fixture()
def toy_eval_data(tmp_path):
    """Trivially separable disease data and a clean yield surface."""
    disease = tmp_path / "disease.csv"
    lines = ["region,latitude,longitude,temperature,humidity,crop,disease"]
    for i in range(30):
        lines.append(f"Rangpur,25.7,89.3,{12.0 + 0.1 * i},70.0,Rice,Blast")
        lines.append(f"Rangpur,25.7,89.3,{30.0 + 0.1 * i},70.0,Rice,None")
    disease.write_text("\n".join(lines) + "\n")

    yields = tmp_path / "yield.csv"
    lines = ["temperature,rainfall,ph,crop,production"]
    for i in range(60):
        t = 16.0 + 0.25 * i
        lines.append(f"{t},1200.0,6.2,Rice,{round(2.0 + 0.3 * t, 4)}")
    yields.write_text("\n".join(lines) + "\n")
    return disease, yields


class TestGenData:
    def test_synthetic_deterministic(self, runner, tmp_path):
        for sub in ("a", "b"):
            result = runner.invoke(main, [
                "gen-data", "--out", str(tmp_path / sub), "--seed", "5",
                "--years", "50", "--yield-rows", "80", "--disease-rows", "80"])
            assert result.exit_code == 0, result.output
        for f in sorted((tmp_path / "a").iterdir()):
            assert f.read_bytes() == (tmp_path / "b" / f.name).read_bytes()

    def test_fixture_flag(self, runner, tmp_path):
        result = runner.invoke(main, ["gen-data", "--out", str(tmp_path), "--fixture"])
        assert result.exit_code == 0, result.output
        assert (tmp_path / "bundle.json").exists()
        assert (tmp_path / "soil_nutrition.csv").exists()

    def test_bad_config_fails(self, runner, tmp_path):
        result = runner.invoke(main, [
            "gen-data", "--out", str(tmp_path), "--years", "20"])
        assert result.exit_code != 0
        assert "50 years" in result.output


class TestTrain:
    def test_deterministic_artifact(self, runner, walkthrough_dir, tmp_path):
        outs = []
        for name in ("m1.json", "m2.json"):
            out = tmp_path / name
            result = runner.invoke(main, [
                "train", "--bundle", str(walkthrough_dir), "--target", "yield",
                "--seed", "3", "--out", str(out)])
            assert result.exit_code == 0, result.output
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_kind_mismatch_fails(self, runner, walkthrough_dir, tmp_path):
        result = runner.invoke(main, [
            "train", "--bundle", str(walkthrough_dir), "--target", "disease",
            "--kind", "DTR", "--out", str(tmp_path / "x.json")])
        assert result.exit_code != 0


class TestEvaluate:
    def test_perfectly_separable_svc_row_all_ones(self, runner, toy_eval_data, tmp_path):
        disease, yields = toy_eval_data
        out = tmp_path / "report.json"
        result = runner.invoke(main, [
            "evaluate", "--disease-data", str(disease), "--yield-data", str(yields),
            "--seed", "0", "--out", str(out)])
        assert result.exit_code == 0, result.output
        report = json.loads(out.read_text())
        svc = report["classification"]["SVC"]
        assert svc["accuracy"] == svc["precision"] == svc["recall"] == svc["f1"] == 1.0
        # table layout: one row per model, four classifier metrics
        lines = result.output.splitlines()
        svc_line = next(line for line in lines if line.startswith("SVC"))
        assert svc_line.split() == ["SVC", "1.0000", "1.0000", "1.0000", "1.0000"]

    def test_table_matches_json(self, runner, toy_eval_data, tmp_path):
        disease, yields = toy_eval_data
        out = tmp_path / "report.json"
        result = runner.invoke(main, [
            "evaluate", "--disease-data", str(disease), "--yield-data", str(yields),
            "--seed", "1", "--out", str(out)])
        assert result.exit_code == 0, result.output
        report = json.loads(out.read_text())
        lines = result.output.splitlines()
        for kind in ("SVC", "RFC", "GBC", "LoR"):
            row = next(line.split() for line in lines if line.startswith(kind))
            r = report["classification"][kind]
            assert float(row[1]) == pytest.approx(r["accuracy"], abs=5e-5)
            assert float(row[2]) == pytest.approx(r["precision"], abs=5e-5)
            assert float(row[3]) == pytest.approx(r["recall"], abs=5e-5)
            assert float(row[4]) == pytest.approx(r["f1"], abs=5e-5)
        for kind in ("DTR", "RFR", "LR", "GBR"):
            row = next(line.split() for line in lines if line.startswith(kind))
            r = report["regression"][kind]
            assert float(row[1]) == pytest.approx(r["mse"], abs=5e-5)
            assert float(row[2]) == pytest.approx(r["rmse"], abs=5e-5)

    def test_split_too_small_fails(self, runner, tmp_path):
        disease = tmp_path / "d.csv"
        disease.write_text("region,latitude,longitude,temperature,humidity,crop,disease\n"
                           "R,25.0,89.0,20.0,70.0,Rice,Blast\n"
                           "R,25.0,89.0,30.0,70.0,Rice,None\n"
                           "R,25.0,89.0,31.0,71.0,Rice,None\n")
        yields = tmp_path / "y.csv"
        yields.write_text("temperature,rainfall,ph,crop,production\n"
                          "20.0,1000.0,6.0,Rice,2.0\n21.0,1100.0,6.1,Rice,2.2\n")
        result = runner.invoke(main, [
            "evaluate", "--disease-data", str(disease), "--yield-data", str(yields)])
        assert result.exit_code != 0
        assert "both sides" in result.output


class TestForecast:
    def test_fixture_station_prints_walkthrough_weather(self, runner, walkthrough_dir,
                                                        tmp_path):
        out = tmp_path / "forecast.json"
        result = runner.invoke(main, [
            "forecast", "--bundle", str(walkthrough_dir), "--station", "Rangpur",
            "--year", "2023", "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert "Jan" in result.output and "15.8" in result.output
        body = json.loads(out.read_text())
        assert body["temperature"][0] == 15.8
        assert body["rainfall"][7] == 572.0

    def test_unknown_station_fails(self, runner, walkthrough_dir):
        result = runner.invoke(main, [
            "forecast", "--bundle", str(walkthrough_dir), "--station", "Atlantis",
            "--year", "2023"])
        assert result.exit_code != 0


class TestRecommend:
    def test_walkthrough_table_row(self, runner, bundle_with_models, tmp_path):
        out = tmp_path / "rec.json"
        result = runner.invoke(main, [
            "recommend", "--bundle", str(bundle_with_models), "--lat", "25.74058",
            "--lon", "89.261139", "--year", "2023", "--out", str(out)])
        assert result.exit_code == 0, result.output
        lines = [line.split() for line in result.output.splitlines()]
        first = next(row for row in lines if row and row[0] == "1")
        assert first[1] == "Papaya"
        assert first[2] == "134.24"
        assert " ".join(first[3:]) == "Not found"
        smut_row = next(row for row in lines if row and row[0] == "2")
        assert smut_row[1] == "Sugarcane" and smut_row[3] == "Smut"

    def test_out_of_range_latitude_usage_error(self, runner, bundle_with_models):
        result = runner.invoke(main, [
            "recommend", "--bundle", str(bundle_with_models), "--lat", "95",
            "--lon", "89.0", "--year", "2023"])
        assert result.exit_code != 0
        assert "latitude" in result.output

    def test_artifact_deterministic(self, runner, bundle_with_models, tmp_path):
        payloads = []
        for name in ("r1.json", "r2.json"):
            out = tmp_path / name
            result = runner.invoke(main, [
                "recommend", "--bundle", str(bundle_with_models), "--lat", "25.74058",
                "--lon", "89.261139", "--year", "2023", "--seed", "0",
                "--out", str(out)])
            assert result.exit_code == 0, result.output
            payloads.append(out.read_bytes())
        assert payloads[0] == payloads[1]

    def test_matches_service_body(self, runner, bundle_with_models, tmp_path):
        out = tmp_path / "rec.json"
        result = runner.invoke(main, [
            "recommend", "--bundle", str(bundle_with_models), "--lat", "25.74058",
            "--lon", "89.261139", "--year", "2023", "--out", str(out)])
        assert result.exit_code == 0, result.output
        cli_body = json.loads(out.read_text())

        from cropadvisor.service import ServiceConfig, create_app
        config = ServiceConfig(bundle_path=str(bundle_with_models))
        with TestClient(create_app(config)) as client:
            resp = client.post("/api/recommend", json={
                "lat": 25.74058, "lon": 89.261139, "year": 2023})
        assert resp.status_code == 200
        assert cli_body == resp.json()


class TestServe:
    def test_missing_bundle_path_fails(self, runner):
        result = runner.invoke(main, ["serve"])
        assert result.exit_code != 0
        assert "bundle path" in result.output
