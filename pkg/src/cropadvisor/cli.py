"""Command-line entry points.

Every command is a thin client over the library: one command, one library
call, dual emission (a human-readable table on stdout plus a JSON artifact
when --out is given).  The recommend artifact uses the exact response
model the HTTP service serves.
"""

from __future__ import annotations

import json
from pathlib import Path

import click

from .data import GeneratorConfig, generate_synthetic, load_dataset, write_fixture_bundle
from .geo import GeoPoint
from .metrics import classification_report, regression_report
from .models import (
    CLASSIFIER_KINDS,
    REGRESSOR_KINDS,
    ModelKind,
    save_model,
    stratified_split,
    train_classifier,
    train_regressor,
)
from .pipeline import (
    PipelineError,
    disease_training_table,
    forecast_weather,
    load_bundle,
    recommend as run_recommend,
    yield_training_table,
)
from .service.schemas import MonthlyWeatherOut, RecommendationOut

MONTHS = ("Jan", "Feb", "Mar", "Apr", "May", "Jun",
          "Jul", "Aug", "Sep", "Oct", "Nov", "Dec")


def _write_json(out, payload):
    if out is not None:
        Path(out).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _fail(message: str):
    raise click.ClickException(message)


@click.group()
def main():
    """Crop recommendation toolkit: data, models, forecasts, service."""


@main.command("gen-data")
@click.option("--out", required=True, type=click.Path(), help="Output directory.")
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--years", default=55, show_default=True, type=int)
@click.option("--stations", default=3, show_default=True, type=int)
@click.option("--zones", default=10, show_default=True, type=int)
@click.option("--yield-rows", default=2000, show_default=True, type=int)
@click.option("--disease-rows", default=1800, show_default=True, type=int)
@click.option("--fixture", is_flag=True,
              help="Write the walkthrough fixture bundle instead of synthetic data.")
def gen_data(out, seed, years, stations, zones, yield_rows, disease_rows, fixture):
    """Generate a seven-dataset bundle (synthetic, or the fixture)."""
    try:
        if fixture:
            manifest = write_fixture_bundle(out)
        else:
            config = GeneratorConfig(years=years, stations=stations, zones=zones,
                                     yield_rows=yield_rows, disease_rows=disease_rows)
            manifest = generate_synthetic(seed, config).write(out)
    except ValueError as exc:
        _fail(str(exc))
    click.echo(f"bundle written: {manifest}")


@main.command()
@click.option("--bundle", required=True, type=click.Path(exists=True),
              help="Bundle manifest JSON.")
@click.option("--target", type=click.Choice(["disease", "yield"]), required=True)
@click.option("--kind", default=None,
              help="Model kind (default: SVC for disease, DTR for yield).")
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out", required=True, type=click.Path(), help="Model JSON path.")
def train(bundle, target, kind, seed, out):
    """Train the disease classifier or the yield regressor."""
    doc = json.loads(Path(bundle).read_text())
    base = Path(bundle).parent
    try:
        if target == "disease":
            kind = kind or "SVC"
            if kind not in CLASSIFIER_KINDS:
                _fail(f"{kind} is not a classifier kind {CLASSIFIER_KINDS}")
            records = load_dataset(base / doc["datasets"]["crop_disease"], "crop_disease")
            model = train_classifier(ModelKind(kind), disease_training_table(records), seed)
        else:
            kind = kind or "DTR"
            if kind not in REGRESSOR_KINDS:
                _fail(f"{kind} is not a regressor kind {REGRESSOR_KINDS}")
            records = load_dataset(base / doc["datasets"]["crop_production"],
                                   "crop_production")
            model = train_regressor(ModelKind(kind), yield_training_table(records), seed)
    except (ValueError, RuntimeError) as exc:
        _fail(str(exc))
    save_model(model, out)
    click.echo(f"{kind} model for {target} written: {out}")


@main.command()
@click.option("--disease-data", required=True, type=click.Path(exists=True))
@click.option("--yield-data", required=True, type=click.Path(exists=True))
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out", default=None, type=click.Path(), help="JSON report path.")
def evaluate(disease_data, yield_data, seed, out):
    """Train and score all four classifiers and all four regressors on a
    stratified 80/20 split."""
    try:
        disease_records = load_dataset(disease_data, "crop_disease")
        yield_records = load_dataset(yield_data, "crop_production")
        cls_table = disease_training_table(disease_records)
        reg_table = yield_training_table(yield_records)
        cls_train, cls_test = stratified_split(cls_table, 0.2, seed)
        reg_train, reg_test = stratified_split(reg_table, 0.2, seed)
    except ValueError as exc:
        _fail(str(exc))

    classification = {}
    for kind in CLASSIFIER_KINDS:
        model = train_classifier(ModelKind(kind), cls_train, seed)
        idx = model.predict_matrix(cls_test.features)
        preds = [model.label_vocabulary[int(i)] for i in idx]
        report = classification_report(list(cls_test.targets), preds)
        classification[kind] = report.to_dict()

    regression = {}
    for kind in REGRESSOR_KINDS:
        model = train_regressor(ModelKind(kind), reg_train, seed)
        preds = model.predict_matrix(reg_test.features)
        report = regression_report(list(reg_test.targets), list(preds))
        regression[kind] = report.to_dict()

    click.echo("Evaluation metrics for the disease prediction model")
    click.echo(f"{'Model':<6} {'Accuracy':>9} {'Precision':>10} {'Recall':>7} {'F1 Score':>9}")
    for kind in CLASSIFIER_KINDS:
        r = classification[kind]
        click.echo(f"{kind:<6} {r['accuracy']:>9.4f} {r['precision']:>10.4f} "
                   f"{r['recall']:>7.4f} {r['f1']:>9.4f}")
    click.echo("")
    click.echo("Evaluation metrics for the production prediction model")
    click.echo(f"{'Model':<6} {'MSE':>10} {'RMSE':>8} {'R-Squared':>10}")
    for kind in REGRESSOR_KINDS:
        r = regression[kind]
        r2 = "undefined" if r["r_squared"] is None else f"{r['r_squared']:.4f}"
        click.echo(f"{kind:<6} {r['mse']:>10.4f} {r['rmse']:>8.4f} {r2:>10}")

    _write_json(out, {"seed": seed, "classification": classification,
                      "regression": regression})


@main.command()
@click.option("--bundle", required=True, type=click.Path(exists=True))
@click.option("--station", required=True)
@click.option("--year", required=True, type=int)
@click.option("--out", default=None, type=click.Path())
def forecast(bundle, station, year, out):
    """Twelve-month weather outlook for a station."""
    doc = json.loads(Path(bundle).read_text())
    base = Path(bundle).parent
    try:
        weather_tables = {
            "temperature": load_dataset(base / doc["datasets"]["temperature_monthly"],
                                        "temperature_monthly"),
            "rainfall": load_dataset(base / doc["datasets"]["rainfall_monthly"],
                                     "rainfall_monthly"),
            "humidity": load_dataset(base / doc["datasets"]["humidity_monthly"],
                                     "humidity_monthly"),
        }
        weather = forecast_weather(station, year, weather_tables)
    except (PipelineError, ValueError) as exc:
        _fail(str(exc))
    click.echo(f"Weather outlook for {station}, {year}")
    click.echo(f"{'Month':<6} {'Temp.(C)':>9} {'Rain.(mm)':>10} {'Hum.(%)':>8}")
    for m in range(12):
        click.echo(f"{MONTHS[m]:<6} {weather.temperature[m]:>9.1f} "
                   f"{weather.rainfall[m]:>10.1f} {weather.humidity[m]:>8.1f}")
    _write_json(out, MonthlyWeatherOut.from_domain(weather).model_dump())


def _validate_lat(_ctx, _param, value):
    if not -90.0 <= value <= 90.0:
        raise click.BadParameter(f"latitude {value} outside [-90, 90]")
    return value


def _validate_lon(_ctx, _param, value):
    if not -180.0 <= value <= 180.0:
        raise click.BadParameter(f"longitude {value} outside [-180, 180]")
    return value


@main.command()
@click.option("--bundle", required=True, type=click.Path(exists=True))
@click.option("--lat", required=True, type=float, callback=_validate_lat)
@click.option("--lon", required=True, type=float, callback=_validate_lon)
@click.option("--year", required=True, type=int)
@click.option("--exclude", multiple=True, help="Crop to exclude (repeatable).")
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out", default=None, type=click.Path())
def recommend(bundle, lat, lon, year, exclude, seed, out):
    """Ranked crop list for a location and target year."""
    try:
        loaded = load_bundle(bundle, seed=seed)
        rec = run_recommend(GeoPoint(lat, lon), year, loaded, exclude_crops=exclude)
    except (PipelineError, ValueError) as exc:
        _fail(str(exc))
    click.echo(f"Final crops list for zone {rec.zone.sub_district}, {year}")
    click.echo(f"{'Final Order':<12} {'Crop':<12} {'Production (ton/hectare)':>25} "
               f"{'Disease':<20}")
    for i, a in enumerate(rec.ranked, start=1):
        disease = ", ".join(a.diseases) if a.diseases else "Not found"
        click.echo(f"{i:<12} {a.crop:<12} {a.predicted_production:>25.2f} {disease:<20}")
    _write_json(out, RecommendationOut.from_domain(rec).model_dump())


@main.command()
@click.option("--bundle", default=None, type=click.Path(exists=True))
@click.option("--config", "config_path", default=None, type=click.Path(exists=True))
@click.option("--host", default=None)
@click.option("--port", default=None, type=int)
@click.option("--static-dir", default=None, type=click.Path())
def serve(bundle, config_path, host, port, static_dir):
    """Run the HTTP service."""
    import uvicorn

    from .service import ServiceConfig, create_app

    try:
        config = ServiceConfig.from_file(config_path, bundle_path=bundle, host=host,
                                         port=port, static_dir=static_dir)
    except ValueError as exc:
        _fail(str(exc))
    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port)


if __name__ == "__main__":
    main()
