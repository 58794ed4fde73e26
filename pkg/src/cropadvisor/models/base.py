"""Shared containers for the supervised models."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

REGRESSOR_KINDS = ("DTR", "RFR", "LR", "GBR")
CLASSIFIER_KINDS = ("SVC", "RFC", "GBC", "LoR")

_DEFAULT_HYPERPARAMS = {
    "DTR": {"max_depth": 12, "min_samples_leaf": 2},
    "RFR": {"n_trees": 100, "max_depth": 0, "min_samples_leaf": 1},
    "LR": {"ridge": 1e-10},
    "GBR": {"n_stages": 200, "shrinkage": 0.1, "max_depth": 3, "min_samples_leaf": 1},
    "SVC": {"cost": 1.0, "tol": 1e-3, "max_passes": 100_000},
    "RFC": {"n_trees": 100, "max_depth": 0, "min_samples_leaf": 1},
    "GBC": {"n_stages": 200, "shrinkage": 0.1, "max_depth": 3, "min_samples_leaf": 1},
    "LoR": {"learning_rate": 0.1, "iterations": 5000, "l2": 1e-4},
}


class TrainingError(RuntimeError):
    """Training could not produce a valid model."""


@dataclass(frozen=True)
class ModelKind:
    """Model family name plus its hyperparameter record."""

    name: str
    hyperparams: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.name not in _DEFAULT_HYPERPARAMS:
            raise ValueError(f"unknown model kind {self.name!r}")
        merged = dict(_DEFAULT_HYPERPARAMS[self.name])
        unknown = set(self.hyperparams) - set(merged)
        if unknown:
            raise ValueError(f"unknown hyperparameters for {self.name}: {sorted(unknown)}")
        merged.update(self.hyperparams)
        _validate_hyperparams(self.name, merged)
        object.__setattr__(self, "hyperparams", merged)

    @property
    def is_regressor(self) -> bool:
        return self.name in REGRESSOR_KINDS

    @property
    def is_classifier(self) -> bool:
        return self.name in CLASSIFIER_KINDS


def _validate_hyperparams(name: str, hp: dict):
    def positive(key):
        if not hp[key] > 0:
            raise ValueError(f"{name}.{key} must be > 0, got {hp[key]}")

    if "max_depth" in hp and hp["max_depth"] < 0:
        raise ValueError(f"{name}.max_depth must be >= 1 (0 = unlimited)")
    if "min_samples_leaf" in hp:
        positive("min_samples_leaf")
    if "n_trees" in hp:
        positive("n_trees")
    if "n_stages" in hp:
        positive("n_stages")
    if "shrinkage" in hp and not 0 < hp["shrinkage"] <= 1:
        raise ValueError(f"{name}.shrinkage must be in (0, 1], got {hp['shrinkage']}")
    if "cost" in hp:
        positive("cost")
    if "learning_rate" in hp:
        positive("learning_rate")


@dataclass(frozen=True)
class LabeledTable:
    """Feature matrix plus per-row targets.

    ``targets`` holds floats for regression tables and label strings for
    classification tables; classification tables also carry an ordered
    label vocabulary.
    """

    feature_names: tuple[str, ...]
    features: np.ndarray
    targets: np.ndarray
    label_vocabulary: tuple[str, ...] | None = None

    def __post_init__(self):
        x = np.asarray(self.features, dtype=float)
        if x.ndim != 2 or x.shape[0] < 1:
            raise ValueError("features must be a non-empty 2-D matrix")
        if x.shape[1] != len(self.feature_names):
            raise ValueError(f"{x.shape[1]} feature columns vs "
                             f"{len(self.feature_names)} feature names")
        if not np.all(np.isfinite(x)):
            raise ValueError("features must all be finite")
        x = x.copy()
        x.setflags(write=False)
        object.__setattr__(self, "features", x)
        object.__setattr__(self, "feature_names", tuple(self.feature_names))

        if self.label_vocabulary is not None:
            vocab = tuple(str(v) for v in self.label_vocabulary)
            if len(set(vocab)) != len(vocab):
                raise ValueError("label vocabulary has duplicates")
            y = np.asarray([str(t) for t in self.targets], dtype=object)
            missing = set(y) - set(vocab)
            if missing:
                raise ValueError(f"targets outside vocabulary: {sorted(missing)}")
            object.__setattr__(self, "label_vocabulary", vocab)
        else:
            y = np.asarray(self.targets, dtype=float)
            if not np.all(np.isfinite(y)):
                raise ValueError("regression targets must be finite")
        if y.shape[0] != x.shape[0]:
            raise ValueError(f"{x.shape[0]} rows vs {y.shape[0]} targets")
        y = y.copy()
        y.setflags(write=False)
        object.__setattr__(self, "targets", y)

    @property
    def is_classification(self) -> bool:
        return self.label_vocabulary is not None

    @property
    def n_rows(self) -> int:
        return int(self.features.shape[0])

    @property
    def n_features(self) -> int:
        return int(self.features.shape[1])

    def class_indices(self) -> np.ndarray:
        """Targets as vocabulary indices (classification only)."""
        lookup = {lab: i for i, lab in enumerate(self.label_vocabulary)}
        return np.asarray([lookup[t] for t in self.targets], dtype=int)

    def take(self, indices) -> "LabeledTable":
        idx = np.asarray(indices, dtype=int)
        return LabeledTable(self.feature_names, self.features[idx],
                            self.targets[idx], self.label_vocabulary)


class TrainedModel:
    """A fitted model: immutable, deterministic, JSON round-trippable."""

    model_type = ""  # set by subclasses

    def __init__(self, kind: ModelKind, feature_names: tuple[str, ...],
                 label_vocabulary: tuple[str, ...] | None, training_seed: int):
        self.kind = kind
        self.feature_names = tuple(feature_names)
        self.label_vocabulary = None if label_vocabulary is None else tuple(label_vocabulary)
        self.training_seed = int(training_seed)

    # subclasses implement raw prediction over a validated float matrix
    def _predict_matrix(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _params_to_json(self) -> dict:
        raise NotImplementedError

    def predict_matrix(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.ndim != 2 or x.shape[1] != len(self.feature_names):
            raise ValueError(f"expected {len(self.feature_names)} features, "
                             f"got shape {x.shape}")
        if not np.all(np.isfinite(x)):
            raise ValueError("features must be finite")
        return self._predict_matrix(x)

    def predict(self, row):
        """Predict one row: a float for regressors, a label for classifiers."""
        out = self.predict_matrix(np.asarray(row, dtype=float).reshape(1, -1))
        if self.label_vocabulary is not None:
            return self.label_vocabulary[int(out[0])]
        return float(out[0])

    def to_json(self) -> dict:
        return {
            "model_type": self.model_type,
            "kind": self.kind.name,
            "hyperparams": self.kind.hyperparams,
            "feature_names": list(self.feature_names),
            "label_vocabulary": None if self.label_vocabulary is None
            else list(self.label_vocabulary),
            "training_seed": self.training_seed,
            "params": self._params_to_json(),
        }


def save_model(model: TrainedModel, path):
    Path(path).write_text(json.dumps(model.to_json(), sort_keys=True, indent=1))


def stratified_split(table: LabeledTable, test_fraction: float = 0.2,
                     seed: int = 0) -> tuple[LabeledTable, LabeledTable]:
    """Deterministic train/test split.

    Classification tables are split per class so every class lands on both
    sides; regression tables get a plain shuffled split.
    """
    if not 0.0 < test_fraction < 1.0:
        raise ValueError(f"test_fraction must be in (0, 1), got {test_fraction}")
    rng = np.random.default_rng(seed)
    n = table.n_rows
    if table.is_classification:
        test_idx = []
        train_idx = []
        y = np.asarray([str(t) for t in table.targets], dtype=object)
        for label in table.label_vocabulary:
            rows = np.flatnonzero(y == label)
            if rows.size == 0:
                continue
            if rows.size < 2:
                raise ValueError(
                    f"class {label!r} has {rows.size} row(s); cannot place it "
                    f"on both sides of the split")
            rows = rows[rng.permutation(rows.size)]
            n_test = max(1, int(round(rows.size * test_fraction)))
            if n_test >= rows.size:
                n_test = rows.size - 1
            test_idx.extend(rows[:n_test])
            train_idx.extend(rows[n_test:])
        train_idx = np.sort(np.asarray(train_idx, dtype=int))
        test_idx = np.sort(np.asarray(test_idx, dtype=int))
    else:
        if n < 2:
            raise ValueError("need at least 2 rows to split")
        perm = rng.permutation(n)
        n_test = min(max(1, int(round(n * test_fraction))), n - 1)
        test_idx = np.sort(perm[:n_test])
        train_idx = np.sort(perm[n_test:])
    return table.take(train_idx), table.take(test_idx)
