"""Classification models: bagged Gini forest, gradient-boosted log-odds,
multinomial logistic regression."""

from __future__ import annotations

import numpy as np

from .base import LabeledTable, ModelKind, TrainedModel, TrainingError
from .tree import DecisionTree, grow_classification_tree, grow_regression_tree


def _check_classification(data: LabeledTable):
    if not data.is_classification:
        raise TrainingError("classifier training needs a classification table")
    y = data.class_indices()
    present = np.bincount(y, minlength=len(data.label_vocabulary))
    missing = [lab for lab, c in zip(data.label_vocabulary, present) if c == 0]
    if missing:
        raise TrainingError(f"classes with zero rows: {missing}")
    if len(data.label_vocabulary) < 2:
        raise TrainingError("need at least 2 classes")
    return y


class RandomForestClassifierModel(TrainedModel):
    model_type = "random_forest_classifier"

    def __init__(self, kind, feature_names, vocab, seed, trees: list[DecisionTree]):
        super().__init__(kind, feature_names, vocab, seed)
        self.trees = trees

    def per_tree_predictions(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.stack([t.predict(x).astype(int) for t in self.trees])

    def _predict_matrix(self, x):
        votes = np.zeros((x.shape[0], len(self.label_vocabulary)))
        for tree in self.trees:
            idx = tree.predict(x).astype(int)
            votes[np.arange(x.shape[0]), idx] += 1.0
        # argmax resolves vote ties to the lowest class index
        return votes.argmax(axis=1).astype(float)

    def _params_to_json(self):
        return {"trees": [t.to_dict() for t in self.trees]}

    @classmethod
    def _from_params(cls, kind, feature_names, vocab, seed, params):
        return cls(kind, feature_names, vocab, seed,
                   [DecisionTree.from_dict(d) for d in params["trees"]])


def train_rfc(kind: ModelKind, data: LabeledTable, seed: int) -> RandomForestClassifierModel:
    y = _check_classification(data)
    if data.n_rows < 2:
        raise TrainingError("random forest needs at least 2 rows")
    hp = kind.hyperparams
    n = data.n_rows
    n_classes = len(data.label_vocabulary)
    # sqrt(m) features per split, at least one
    max_features = max(1, int(np.sqrt(data.n_features)))
    trees = []
    for t in range(hp["n_trees"]):
        rng = np.random.default_rng([seed, t])
        sample = rng.integers(0, n, n)
        trees.append(grow_classification_tree(
            data.features[sample], y[sample], n_classes,
            max_depth=hp["max_depth"], min_samples_leaf=hp["min_samples_leaf"],
            max_features=max_features, rng=rng))
    return RandomForestClassifierModel(kind, data.feature_names,
                                       data.label_vocabulary, seed, trees)


class GradientBoostingClassifierModel(TrainedModel):
    model_type = "gradient_boosting_classifier"

    def __init__(self, kind, feature_names, vocab, seed, base_scores: np.ndarray,
                 stages: list[list[DecisionTree]]):
        super().__init__(kind, feature_names, vocab, seed)
        self.base_scores = np.asarray(base_scores, dtype=float)
        self.stages = stages

    def decision_scores(self, x: np.ndarray) -> np.ndarray:
        scores = np.tile(self.base_scores, (x.shape[0], 1))
        nu = self.kind.hyperparams["shrinkage"]
        for stage in self.stages:
            for k, tree in enumerate(stage):
                scores[:, k] += nu * tree.predict(x)
        return scores

    def _predict_matrix(self, x):
        return self.decision_scores(x).argmax(axis=1).astype(float)

    def _params_to_json(self):
        return {"base_scores": self.base_scores.tolist(),
                "stages": [[t.to_dict() for t in stage] for stage in self.stages]}

    @classmethod
    def _from_params(cls, kind, feature_names, vocab, seed, params):
        stages = [[DecisionTree.from_dict(d) for d in stage]
                  for stage in params["stages"]]
        return cls(kind, feature_names, vocab, seed,
                   np.asarray(params["base_scores"]), stages)


def train_gbc(kind: ModelKind, data: LabeledTable, seed: int) -> GradientBoostingClassifierModel:
    y = _check_classification(data)
    if data.n_rows < 2:
        raise TrainingError("gradient boosting needs at least 2 rows")
    hp = kind.hyperparams
    nu = hp["shrinkage"]
    n, n_classes = data.n_rows, len(data.label_vocabulary)
    onehot = np.zeros((n, n_classes))
    onehot[np.arange(n), y] = 1.0
    priors = onehot.mean(axis=0)
    base = np.log(priors)
    scores = np.tile(base, (n, 1))
    stages: list[list[DecisionTree]] = []
    factor = (n_classes - 1.0) / n_classes
    for _ in range(hp["n_stages"]):
        shifted = scores - scores.max(axis=1, keepdims=True)
        expd = np.exp(shifted)
        probs = expd / expd.sum(axis=1, keepdims=True)
        stage = []
        for k in range(n_classes):
            residual = onehot[:, k] - probs[:, k]
            tree = grow_regression_tree(data.features, residual,
                                        max_depth=hp["max_depth"],
                                        min_samples_leaf=hp["min_samples_leaf"])
            # Newton leaf values for the multinomial deviance
            leaf_of = tree.apply(data.features)
            hess = probs[:, k] * (1.0 - probs[:, k])
            for leaf in tree.leaf_nodes():
                members = leaf_of == leaf.leaf_id
                denom = float(hess[members].sum())
                num = float(residual[members].sum())
                leaf.value = 0.0 if denom < 1e-12 else factor * num / denom
            scores[:, k] += nu * tree.predict(data.features)
            stage.append(tree)
        stages.append(stage)
    return GradientBoostingClassifierModel(kind, data.feature_names,
                                           data.label_vocabulary, seed, base, stages)


class LogisticRegressionModel(TrainedModel):
    model_type = "logistic_regression"

    def __init__(self, kind, feature_names, vocab, seed, weights, bias, mean, scale):
        super().__init__(kind, feature_names, vocab, seed)
        self.weights = np.asarray(weights, dtype=float)   # (m, K)
        self.bias = np.asarray(bias, dtype=float)         # (K,)
        self.mean = np.asarray(mean, dtype=float)
        self.scale = np.asarray(scale, dtype=float)

    def decision_scores(self, x: np.ndarray) -> np.ndarray:
        z = (x - self.mean) / self.scale
        return z @ self.weights + self.bias

    def _predict_matrix(self, x):
        return self.decision_scores(x).argmax(axis=1).astype(float)

    def _params_to_json(self):
        return {"weights": self.weights.tolist(), "bias": self.bias.tolist(),
                "mean": self.mean.tolist(), "scale": self.scale.tolist()}

    @classmethod
    def _from_params(cls, kind, feature_names, vocab, seed, params):
        return cls(kind, feature_names, vocab, seed, np.asarray(params["weights"]),
                   np.asarray(params["bias"]), np.asarray(params["mean"]),
                   np.asarray(params["scale"]))


def train_lor(kind: ModelKind, data: LabeledTable, seed: int) -> LogisticRegressionModel:
    """Multinomial logistic regression by full-batch gradient descent on
    internally standardized features."""
    y = _check_classification(data)
    hp = kind.hyperparams
    n, m = data.features.shape
    n_classes = len(data.label_vocabulary)
    mean = data.features.mean(axis=0)
    scale = data.features.std(axis=0)
    scale[scale == 0.0] = 1.0
    z = (data.features - mean) / scale
    onehot = np.zeros((n, n_classes))
    onehot[np.arange(n), y] = 1.0
    w = np.zeros((m, n_classes))
    b = np.zeros(n_classes)
    lr, l2 = hp["learning_rate"], hp["l2"]
    for _ in range(hp["iterations"]):
        logits = z @ w + b
        logits -= logits.max(axis=1, keepdims=True)
        expd = np.exp(logits)
        probs = expd / expd.sum(axis=1, keepdims=True)
        err = probs - onehot
        w -= lr * (z.T @ err / n + l2 * w)
        b -= lr * err.mean(axis=0)
    if not (np.all(np.isfinite(w)) and np.all(np.isfinite(b))):
        raise TrainingError("logistic regression diverged")
    return LogisticRegressionModel(kind, data.feature_names, data.label_vocabulary,
                                   seed, w, b, mean, scale)
