"""Classification and regression evaluation reports."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence


@dataclass(frozen=True)
class ClassScores:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class ClassificationReport:
    accuracy: float
    precision: float
    recall: float
    f1: float
    per_class: dict[str, ClassScores]
    zero_division_labels: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "per_class": {
                lab: {
                    "precision": s.precision,
                    "recall": s.recall,
                    "f1": s.f1,
                    "support": s.support,
                }
                for lab, s in self.per_class.items()
            },
            "zero_division_labels": list(self.zero_division_labels),
        }


@dataclass(frozen=True)
class RegressionReport:
    mse: float
    rmse: float
    r_squared: float
    r_squared_defined: bool = True

    def to_dict(self) -> dict:
        return {
            "mse": self.mse,
            "rmse": self.rmse,
            "r_squared": self.r_squared if self.r_squared_defined else None,
            "r_squared_defined": self.r_squared_defined,
        }


def classification_report(y_true: Sequence, y_pred: Sequence) -> ClassificationReport:
    """Accuracy plus support-weighted precision/recall/F1 with a per-label
    breakdown.  Labels with a zero denominator score 0 and are flagged."""
    if len(y_true) != len(y_pred):
        raise ValueError(f"length mismatch: {len(y_true)} true vs {len(y_pred)} predicted")
    if len(y_true) == 0:
        raise ValueError("empty input")

    y_true = [str(v) for v in y_true]
    y_pred = [str(v) for v in y_pred]
    n = len(y_true)
    labels = sorted(set(y_true) | set(y_pred))

    tp = {lab: 0 for lab in labels}
    fp = {lab: 0 for lab in labels}
    fn = {lab: 0 for lab in labels}
    support = {lab: 0 for lab in labels}
    correct = 0
    for t, p in zip(y_true, y_pred):
        support[t] += 1
        if t == p:
            correct += 1
            tp[t] += 1
        else:
            fp[p] += 1
            fn[t] += 1

    per_class: dict[str, ClassScores] = {}
    flagged = []
    for lab in labels:
        denom_p = tp[lab] + fp[lab]
        denom_r = tp[lab] + fn[lab]
        if denom_p == 0 or denom_r == 0:
            flagged.append(lab)
        prec = tp[lab] / denom_p if denom_p else 0.0
        rec = tp[lab] / denom_r if denom_r else 0.0
        f1 = 2.0 * prec * rec / (prec + rec) if (prec + rec) > 0 else 0.0
        per_class[lab] = ClassScores(prec, rec, f1, support[lab])

    accuracy = correct / n
    w_prec = sum(s.precision * s.support for s in per_class.values()) / n
    w_rec = sum(s.recall * s.support for s in per_class.values()) / n
    w_f1 = sum(s.f1 * s.support for s in per_class.values()) / n
    return ClassificationReport(accuracy, w_prec, w_rec, w_f1, per_class, tuple(flagged))


def regression_report(y_true: Sequence[float], y_pred: Sequence[float]) -> RegressionReport:
    """MSE, RMSE and R^2.  A constant target leaves R^2 undefined; it is
    reported as NaN with the ``r_squared_defined`` flag cleared."""
    if len(y_true) != len(y_pred):
        raise ValueError(f"length mismatch: {len(y_true)} true vs {len(y_pred)} predicted")
    if len(y_true) < 2:
        raise ValueError("need at least 2 observations")

    n = len(y_true)
    ss_res = 0.0
    for t, p in zip(y_true, y_pred):
        if not (math.isfinite(t) and math.isfinite(p)):
            raise ValueError("non-finite value in input")
        ss_res += (t - p) ** 2
    mean = sum(y_true) / n
    ss_tot = sum((t - mean) ** 2 for t in y_true)

    mse = ss_res / n
    rmse = math.sqrt(mse)
    if ss_tot == 0.0:
        return RegressionReport(mse, rmse, float("nan"), r_squared_defined=False)
    return RegressionReport(mse, rmse, 1.0 - ss_res / ss_tot)
