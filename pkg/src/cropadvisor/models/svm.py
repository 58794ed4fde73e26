"""Soft-margin support vector classification trained by sequential minimal
optimization, with an RBF kernel and a one-vs-rest multiclass wrapper.

Features are standardized internally before the kernel is applied; mixed
raw scales (temperatures, percentages, coordinates, one-hot indicators)
would otherwise collapse the RBF into a near-constant kernel.
"""

from __future__ import annotations

import numpy as np

from .base import LabeledTable, ModelKind, TrainedModel, TrainingError


def _rbf(a: np.ndarray, b: np.ndarray, gamma: float) -> np.ndarray:
    sq = (np.sum(a * a, axis=1)[:, None] + np.sum(b * b, axis=1)[None, :]
          - 2.0 * (a @ b.T))
    np.maximum(sq, 0.0, out=sq)
    return np.exp(-gamma * sq)


class _SmoState:
    """Mutable SMO working set: dual coefficients, bias, decision values."""

    def __init__(self, kmat, y, cost):
        self.kmat = kmat
        self.y = y
        self.cost = cost
        self.alphas = np.zeros(y.size)
        self.b = 0.0
        self.fx = np.zeros(y.size)  # kernel part of the decision values

    def errors(self):
        return self.fx + self.b - self.y

    def step(self, i, j) -> bool:
        """Platt's joint update of (alpha_i, alpha_j) and the bias."""
        y, alphas, kmat, cost = self.y, self.alphas, self.kmat, self.cost
        ai, aj = alphas[i], alphas[j]
        if y[i] == y[j]:
            low, high = max(0.0, ai + aj - cost), min(cost, ai + aj)
        else:
            low, high = max(0.0, aj - ai), min(cost, cost + aj - ai)
        if high - low < 1e-12:
            return False
        eta = 2.0 * kmat[i, j] - kmat[i, i] - kmat[j, j]
        if eta >= 0.0:
            return False
        ei = self.fx[i] + self.b - y[i]
        ej = self.fx[j] + self.b - y[j]
        aj_new = aj - y[j] * (ei - ej) / eta
        aj_new = min(high, max(low, aj_new))
        if abs(aj_new - aj) < 1e-12:
            return False
        ai_new = ai + y[i] * y[j] * (aj - aj_new)
        b1 = self.b - ei - y[i] * (ai_new - ai) * kmat[i, i] \
            - y[j] * (aj_new - aj) * kmat[i, j]
        b2 = self.b - ej - y[i] * (ai_new - ai) * kmat[i, j] \
            - y[j] * (aj_new - aj) * kmat[j, j]
        if 1e-9 < ai_new < cost - 1e-9:
            self.b = b1
        elif 1e-9 < aj_new < cost - 1e-9:
            self.b = b2
        else:
            self.b = 0.5 * (b1 + b2)
        alphas[i], alphas[j] = ai_new, aj_new
        self.fx += (ai_new - ai) * y[i] * kmat[i] + (aj_new - aj) * y[j] * kmat[j]
        return True


def _smo_binary(kmat: np.ndarray, y: np.ndarray, cost: float, tol: float,
                max_passes: int):
    """SMO on a precomputed kernel matrix.

    Returns (alphas, bias).  A sweep that cannot move any violating pair
    means convergence; hitting the pass cap first is an error.  Partner
    selection is by largest error gap with an exhaustive fallback, so the
    whole routine is deterministic.
    """
    n = y.size
    state = _SmoState(kmat, y, cost)
    for _ in range(max_passes):
        changed = 0
        for i in range(n):
            ei = state.fx[i] + state.b - y[i]
            alpha_i = state.alphas[i]
            if not ((y[i] * ei < -tol and alpha_i < cost)
                    or (y[i] * ei > tol and alpha_i > 0)):
                continue
            errs = state.errors()
            j = int(np.argmax(np.abs(errs - errs[i])))
            if j != i and state.step(i, j):
                changed += 1
                continue
            # a violating point must not be abandoned while any partner works
            for j in np.argsort(-np.abs(errs - errs[i]), kind="stable"):
                if j != i and state.step(i, int(j)):
                    changed += 1
                    break
        if changed == 0:
            break
    else:
        raise TrainingError(f"SMO did not converge within {max_passes} passes")
    return state.alphas, state.b


class SupportVectorClassifierModel(TrainedModel):
    model_type = "support_vector_classifier"

    def __init__(self, kind, feature_names, vocab, seed, mean, scale, gamma,
                 sv_features, sv_alpha_y, biases):
        super().__init__(kind, feature_names, vocab, seed)
        self.mean = np.asarray(mean, dtype=float)
        self.scale = np.asarray(scale, dtype=float)
        self.gamma = float(gamma)
        # per class: support vectors (standardized) and alpha*y weights
        self.sv_features = [np.asarray(f, dtype=float) for f in sv_features]
        self.sv_alpha_y = [np.asarray(a, dtype=float) for a in sv_alpha_y]
        self.biases = np.asarray(biases, dtype=float)

    def decision_scores(self, x: np.ndarray) -> np.ndarray:
        z = (x - self.mean) / self.scale
        scores = np.empty((x.shape[0], len(self.biases)))
        for k in range(len(self.biases)):
            if self.sv_features[k].shape[0] == 0:
                scores[:, k] = self.biases[k]
                continue
            kern = _rbf(z, self.sv_features[k], self.gamma)
            scores[:, k] = kern @ self.sv_alpha_y[k] + self.biases[k]
        return scores

    def _predict_matrix(self, x):
        # argmax of one-vs-rest decision values; ties go to the
        # first-trained (lowest-index) class
        return self.decision_scores(x).argmax(axis=1).astype(float)

    def _params_to_json(self):
        return {
            "mean": self.mean.tolist(),
            "scale": self.scale.tolist(),
            "gamma": self.gamma,
            "classes": [
                {"sv_features": f.tolist(), "sv_alpha_y": a.tolist(), "bias": float(b)}
                for f, a, b in zip(self.sv_features, self.sv_alpha_y, self.biases)
            ],
        }

    @classmethod
    def _from_params(cls, kind, feature_names, vocab, seed, params):
        classes = params["classes"]
        return cls(kind, feature_names, vocab, seed, params["mean"], params["scale"],
                   params["gamma"],
                   [np.asarray(c["sv_features"], dtype=float).reshape(-1, len(feature_names))
                    for c in classes],
                   [c["sv_alpha_y"] for c in classes],
                   [c["bias"] for c in classes])


def train_svc(kind: ModelKind, data: LabeledTable, seed: int) -> SupportVectorClassifierModel:
    from .classifiers import _check_classification

    y_idx = _check_classification(data)
    hp = kind.hyperparams
    mean = data.features.mean(axis=0)
    scale = data.features.std(axis=0)
    scale[scale == 0.0] = 1.0
    z = (data.features - mean) / scale
    gamma = 1.0 / (data.n_features * float(z.var()))
    kmat = _rbf(z, z, gamma)

    sv_features, sv_alpha_y, biases = [], [], []
    kkt = []
    for k in range(len(data.label_vocabulary)):
        y = np.where(y_idx == k, 1.0, -1.0)
        alphas, b = _smo_binary(kmat, y, hp["cost"], hp["tol"], hp["max_passes"])
        keep = alphas > 1e-9
        sv_features.append(z[keep])
        sv_alpha_y.append(alphas[keep] * y[keep])
        biases.append(b)
        kkt.append(_kkt_violation(kmat, y, alphas, b, hp["cost"]))

    model = SupportVectorClassifierModel(kind, data.feature_names, data.label_vocabulary,
                                         seed, mean, scale, gamma, sv_features,
                                         sv_alpha_y, biases)
    model.kkt_violation = max(kkt)
    return model


def _kkt_violation(kmat, y, alphas, b, cost) -> float:
    """Largest complementary-slackness residual over the training points."""
    fx = kmat @ (alphas * y) + b
    margins = y * fx
    worst = 0.0
    for i in range(y.size):
        if alphas[i] < 1e-9:
            worst = max(worst, 1.0 - margins[i])
        elif alphas[i] > cost - 1e-9:
            worst = max(worst, margins[i] - 1.0)
        else:
            worst = max(worst, abs(margins[i] - 1.0))
    return worst
