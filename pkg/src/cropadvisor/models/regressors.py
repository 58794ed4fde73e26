"""Regression models: single tree, bagged forest, linear least squares,
gradient-boosted trees."""

from __future__ import annotations

import numpy as np

from .base import LabeledTable, ModelKind, TrainedModel, TrainingError
from .tree import DecisionTree, grow_regression_tree


class DecisionTreeRegressorModel(TrainedModel):
    model_type = "decision_tree_regressor"

    def __init__(self, kind, feature_names, seed, tree: DecisionTree):
        super().__init__(kind, feature_names, None, seed)
        self.tree = tree

    def _predict_matrix(self, x):
        return self.tree.predict(x)

    def _params_to_json(self):
        return {"tree": self.tree.to_dict()}

    @classmethod
    def _from_params(cls, kind, feature_names, _vocab, seed, params):
        return cls(kind, feature_names, seed, DecisionTree.from_dict(params["tree"]))


def train_dtr(kind: ModelKind, data: LabeledTable, seed: int) -> DecisionTreeRegressorModel:
    hp = kind.hyperparams
    tree = grow_regression_tree(data.features, data.targets,
                                max_depth=hp["max_depth"],
                                min_samples_leaf=hp["min_samples_leaf"])
    return DecisionTreeRegressorModel(kind, data.feature_names, seed, tree)


class RandomForestRegressorModel(TrainedModel):
    model_type = "random_forest_regressor"

    def __init__(self, kind, feature_names, seed, trees: list[DecisionTree]):
        super().__init__(kind, feature_names, None, seed)
        self.trees = trees

    def _predict_matrix(self, x):
        acc = np.zeros(x.shape[0])
        for tree in self.trees:
            acc += tree.predict(x)
        return acc / len(self.trees)

    def per_tree_predictions(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.stack([t.predict(x) for t in self.trees])

    def _params_to_json(self):
        return {"trees": [t.to_dict() for t in self.trees]}

    @classmethod
    def _from_params(cls, kind, feature_names, _vocab, seed, params):
        return cls(kind, feature_names, seed,
                   [DecisionTree.from_dict(d) for d in params["trees"]])


def train_rfr(kind: ModelKind, data: LabeledTable, seed: int) -> RandomForestRegressorModel:
    if data.n_rows < 2:
        raise TrainingError("random forest needs at least 2 rows")
    hp = kind.hyperparams
    n = data.n_rows
    # m/3 features per split, at least one
    max_features = max(1, data.n_features // 3)
    trees = []
    for t in range(hp["n_trees"]):
        rng = np.random.default_rng([seed, t])
        sample = rng.integers(0, n, n)
        trees.append(grow_regression_tree(
            data.features[sample], data.targets[sample],
            max_depth=hp["max_depth"], min_samples_leaf=hp["min_samples_leaf"],
            max_features=max_features, rng=rng))
    return RandomForestRegressorModel(kind, data.feature_names, seed, trees)


class LinearRegressionModel(TrainedModel):
    model_type = "linear_regression"

    def __init__(self, kind, feature_names, seed, coeffs: np.ndarray, intercept: float):
        super().__init__(kind, feature_names, None, seed)
        self.coeffs = np.asarray(coeffs, dtype=float)
        self.intercept = float(intercept)

    def _predict_matrix(self, x):
        return x @ self.coeffs + self.intercept

    def _params_to_json(self):
        return {"coeffs": self.coeffs.tolist(), "intercept": self.intercept}

    @classmethod
    def _from_params(cls, kind, feature_names, _vocab, seed, params):
        return cls(kind, feature_names, seed, np.asarray(params["coeffs"]),
                   params["intercept"])


def train_lr(kind: ModelKind, data: LabeledTable, seed: int) -> LinearRegressionModel:
    x = np.hstack([data.features, np.ones((data.n_rows, 1))])
    gram = x.T @ x
    # Ridge jitter keeps rank-deficient systems solvable without changing
    # well-posed solutions measurably.
    jitter = kind.hyperparams["ridge"] * max(1.0, float(np.trace(gram)) / gram.shape[0])
    beta = np.linalg.solve(gram + jitter * np.eye(gram.shape[0]), x.T @ data.targets)
    if not np.all(np.isfinite(beta)):
        raise TrainingError("linear solve produced non-finite coefficients")
    return LinearRegressionModel(kind, data.feature_names, seed, beta[:-1], beta[-1])


class GradientBoostingRegressorModel(TrainedModel):
    model_type = "gradient_boosting_regressor"

    def __init__(self, kind, feature_names, seed, base_value: float,
                 trees: list[DecisionTree], staged_train_mse: list[float]):
        super().__init__(kind, feature_names, None, seed)
        self.base_value = float(base_value)
        self.trees = trees
        self.staged_train_mse = list(staged_train_mse)

    def _predict_matrix(self, x):
        acc = np.full(x.shape[0], self.base_value)
        nu = self.kind.hyperparams["shrinkage"]
        for tree in self.trees:
            acc += nu * tree.predict(x)
        return acc

    def _params_to_json(self):
        return {"base_value": self.base_value,
                "trees": [t.to_dict() for t in self.trees],
                "staged_train_mse": self.staged_train_mse}

    @classmethod
    def _from_params(cls, kind, feature_names, _vocab, seed, params):
        return cls(kind, feature_names, seed, params["base_value"],
                   [DecisionTree.from_dict(d) for d in params["trees"]],
                   params["staged_train_mse"])


def train_gbr(kind: ModelKind, data: LabeledTable, seed: int) -> GradientBoostingRegressorModel:
    if data.n_rows < 2:
        raise TrainingError("gradient boosting needs at least 2 rows")
    hp = kind.hyperparams
    nu = hp["shrinkage"]
    y = data.targets
    base = float(y.mean())
    current = np.full(data.n_rows, base)
    trees = []
    staged = [float(np.mean((y - current) ** 2))]
    for _ in range(hp["n_stages"]):
        residual = y - current
        tree = grow_regression_tree(data.features, residual,
                                    max_depth=hp["max_depth"],
                                    min_samples_leaf=hp["min_samples_leaf"])
        current = current + nu * tree.predict(data.features)
        trees.append(tree)
        staged.append(float(np.mean((y - current) ** 2)))
    return GradientBoostingRegressorModel(kind, data.feature_names, seed, base, trees, staged)
