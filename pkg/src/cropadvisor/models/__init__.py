"""Supervised models behind a uniform train/predict/save interface.

Regressors: DTR (single tree), RFR (bagged forest), LR (least squares),
GBR (boosted trees).  Classifiers: SVC (SMO-trained RBF machine), RFC,
GBC, LoR (multinomial logistic).
"""

from __future__ import annotations

import json
from pathlib import Path

from .base import (
    CLASSIFIER_KINDS,
    REGRESSOR_KINDS,
    LabeledTable,
    ModelKind,
    TrainedModel,
    TrainingError,
    save_model,
    stratified_split,
)
from .classifiers import (
    GradientBoostingClassifierModel,
    LogisticRegressionModel,
    RandomForestClassifierModel,
    train_gbc,
    train_lor,
    train_rfc,
)
from .regressors import (
    DecisionTreeRegressorModel,
    GradientBoostingRegressorModel,
    LinearRegressionModel,
    RandomForestRegressorModel,
    train_dtr,
    train_gbr,
    train_lr,
    train_rfr,
)
from .svm import SupportVectorClassifierModel, train_svc

_REGRESSOR_TRAINERS = {
    "DTR": train_dtr,
    "RFR": train_rfr,
    "LR": train_lr,
    "GBR": train_gbr,
}

_CLASSIFIER_TRAINERS = {
    "SVC": train_svc,
    "RFC": train_rfc,
    "GBC": train_gbc,
    "LoR": train_lor,
}

_MODEL_CLASSES = {
    cls.model_type: cls
    for cls in (
        DecisionTreeRegressorModel,
        RandomForestRegressorModel,
        LinearRegressionModel,
        GradientBoostingRegressorModel,
        SupportVectorClassifierModel,
        RandomForestClassifierModel,
        GradientBoostingClassifierModel,
        LogisticRegressionModel,
    )
}


def train_regressor(kind: ModelKind | str, data: LabeledTable, seed: int = 0) -> TrainedModel:
    if isinstance(kind, str):
        kind = ModelKind(kind)
    if not kind.is_regressor:
        raise TrainingError(f"{kind.name} is not a regressor kind")
    if data.is_classification:
        raise TrainingError("regressor training needs a regression table")
    return _REGRESSOR_TRAINERS[kind.name](kind, data, seed)


def train_classifier(kind: ModelKind | str, data: LabeledTable, seed: int = 0) -> TrainedModel:
    if isinstance(kind, str):
        kind = ModelKind(kind)
    if not kind.is_classifier:
        raise TrainingError(f"{kind.name} is not a classifier kind")
    return _CLASSIFIER_TRAINERS[kind.name](kind, data, seed)


def predict(model: TrainedModel, row):
    """Evaluate one feature vector; classifiers return a vocabulary label."""
    return model.predict(row)


def model_from_json(doc: dict) -> TrainedModel:
    cls = _MODEL_CLASSES.get(doc.get("model_type"))
    if cls is None:
        raise ValueError(f"unknown model_type {doc.get('model_type')!r}")
    kind = ModelKind(doc["kind"], doc.get("hyperparams", {}))
    vocab = doc.get("label_vocabulary")
    return cls._from_params(kind, tuple(doc["feature_names"]),
                            None if vocab is None else tuple(vocab),
                            doc.get("training_seed", 0), doc["params"])


def load_model(path) -> TrainedModel:
    return model_from_json(json.loads(Path(path).read_text()))


__all__ = [
    "CLASSIFIER_KINDS",
    "REGRESSOR_KINDS",
    "LabeledTable",
    "ModelKind",
    "TrainedModel",
    "TrainingError",
    "load_model",
    "model_from_json",
    "predict",
    "save_model",
    "stratified_split",
    "train_classifier",
    "train_regressor",
]
