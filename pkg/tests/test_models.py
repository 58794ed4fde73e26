import json

import numpy as np
import pytest

from cropadvisor.models import (
    CLASSIFIER_KINDS,
    REGRESSOR_KINDS,
    LabeledTable,
    ModelKind,
    TrainingError,
    load_model,
    model_from_json,
    save_model,
    stratified_split,
    train_classifier,
    train_regressor,
)


def regression_table(x, y, names=None):
    x = np.atleast_2d(np.asarray(x, dtype=float))
    names = names or tuple(f"f{i}" for i in range(x.shape[1]))
    return LabeledTable(tuple(names), x, np.asarray(y, dtype=float))


def blob_table(rng, centers, n_per, spread=0.5, labels=None):
    rows, targets = [], []
    labels = labels or [f"c{i}" for i in range(len(centers))]
    for center, label in zip(centers, labels):
        pts = rng.normal(0, spread, (n_per, len(center))) + np.asarray(center)
        rows.append(pts)
        targets.extend([label] * n_per)
    x = np.vstack(rows)
    names = tuple(f"f{i}" for i in range(x.shape[1]))
    return LabeledTable(names, x, np.asarray(targets, dtype=object),
                        tuple(sorted(set(labels))))


class TestModelKind:
    def test_defaults_merged(self):
        kind = ModelKind("DTR")
        assert kind.hyperparams["max_depth"] == 12
        assert kind.hyperparams["min_samples_leaf"] == 2

    def test_overrides_and_validation(self):
        kind = ModelKind("GBR", {"n_stages": 50})
        assert kind.hyperparams["n_stages"] == 50
        with pytest.raises(ValueError):
            ModelKind("SVC", {"cost": -1.0})
        with pytest.raises(ValueError):
            ModelKind("DTR", {"bogus": 1})
        with pytest.raises(ValueError):
            ModelKind("XGB")


class TestLabeledTable:
    def test_validation(self):
        with pytest.raises(ValueError):
            LabeledTable(("a",), np.ones((2, 2)), np.ones(2))
        with pytest.raises(ValueError):
            LabeledTable(("a",), np.ones((2, 1)), np.ones(3))
        with pytest.raises(ValueError):
            LabeledTable(("a",), np.array([[np.inf]]), np.ones(1))
        with pytest.raises(ValueError):
            LabeledTable(("a",), np.ones((2, 1)), np.array(["x", "y"], dtype=object),
                         ("x",))  # target outside vocabulary


class TestDecisionTreeRegressor:
    def test_single_split_function_exact(self):
        rng = np.random.default_rng(0)
        x = rng.uniform(-1, 1, (80, 2))
        y = 10.0 * (x[:, 0] > 0)
        model = train_regressor("DTR", regression_table(x, y), seed=0)
        preds = model.predict_matrix(x)
        assert np.array_equal(preds, y)

    def test_training_row_hits_its_leaf_value(self):
        # Interpolating tree: distinct rows, unlimited-ish depth
        rng = np.random.default_rng(1)
        x = rng.uniform(0, 1, (40, 2))
        y = rng.uniform(0, 5, 40)
        model = train_regressor(ModelKind("DTR", {"max_depth": 0, "min_samples_leaf": 1}),
                                regression_table(x, y), seed=0)
        for i in range(40):
            assert model.predict(x[i]) == pytest.approx(y[i], abs=1e-12)

    def test_monotone_transform_invariance(self):
        rng = np.random.default_rng(2)
        x = rng.uniform(0.1, 4.0, (120, 3))
        y = np.sin(x[:, 0]) + x[:, 1] ** 2
        table = regression_table(x, y)
        model = train_regressor("DTR", table, seed=0)
        x2 = x.copy()
        x2[:, 1] = np.exp(x2[:, 1])  # strictly monotone on one feature
        model2 = train_regressor("DTR", regression_table(x2, y), seed=0)
        # probe at observed feature values so ordering is all that matters
        assert np.allclose(model.predict_matrix(x), model2.predict_matrix(x2))


class TestLinearRegression:
    def test_exact_line(self):
        x = np.linspace(-5, 5, 30).reshape(-1, 1)
        y = 3.0 * x[:, 0] + 2.0
        model = train_regressor("LR", regression_table(x, y), seed=0)
        assert model.coeffs[0] == pytest.approx(3.0, abs=1e-8)
        assert model.intercept == pytest.approx(2.0, abs=1e-8)
        assert model.predict([4.0]) == pytest.approx(14.0, abs=1e-8)

    def test_rank_deficient_survives(self):
        # Duplicate column: plain normal equations would be singular.
        x = np.column_stack([np.arange(10.0), np.arange(10.0)])
        y = 2 * np.arange(10.0) + 1
        model = train_regressor("LR", regression_table(x, y), seed=0)
        preds = model.predict_matrix(x)
        assert np.allclose(preds, y, atol=1e-6)


class TestGradientBoostingRegressor:
    def test_smooth_function_mse_under_variance_baseline(self):
        rng = np.random.default_rng(3)
        x = rng.uniform(-2, 2, (300, 2))
        y = np.sin(x[:, 0]) * np.cos(x[:, 1]) + 0.5 * x[:, 0]
        model = train_regressor("GBR", regression_table(x, y), seed=0)
        mse = float(np.mean((model.predict_matrix(x) - y) ** 2))
        assert mse < 0.1 * float(np.var(y))

    def test_staged_loss_non_increasing(self):
        rng = np.random.default_rng(4)
        x = rng.uniform(-1, 1, (150, 2))
        y = x[:, 0] ** 2 + rng.normal(0, 0.1, 150)
        model = train_regressor("GBR", regression_table(x, y), seed=0)
        losses = model.staged_train_mse
        assert len(losses) == 201
        assert all(b <= a + 1e-12 for a, b in zip(losses, losses[1:]))

    def test_single_row_rejected(self):
        table = regression_table([[1.0]], [2.0])
        with pytest.raises(TrainingError):
            train_regressor("GBR", table, seed=0)
        with pytest.raises(TrainingError):
            train_regressor("RFR", table, seed=0)


class TestRandomForestRegressor:
    def test_fits_reasonably(self):
        rng = np.random.default_rng(5)
        x = rng.uniform(-2, 2, (200, 3))
        y = x[:, 0] * 2 + x[:, 1] ** 2
        model = train_regressor("RFR", regression_table(x, y), seed=0)
        mse = float(np.mean((model.predict_matrix(x) - y) ** 2))
        assert mse < 0.2 * float(np.var(y))

    def test_mean_of_trees(self):
        rng = np.random.default_rng(6)
        x = rng.uniform(0, 1, (60, 2))
        y = x[:, 0] + x[:, 1]
        model = train_regressor(ModelKind("RFR", {"n_trees": 7}),
                                regression_table(x, y), seed=1)
        probe = rng.uniform(0, 1, (10, 2))
        per_tree = model.per_tree_predictions(probe)
        assert np.allclose(per_tree.mean(axis=0), model.predict_matrix(probe))


class TestSvc:
    def test_separable_blobs_training_accuracy_one(self):
        rng = np.random.default_rng(7)
        table = blob_table(rng, [(-3, -3), (3, 3)], 50)
        model = train_classifier("SVC", table, seed=0)
        preds = [model.predict(row) for row in table.features]
        acc = np.mean([p == t for p, t in zip(preds, table.targets)])
        assert acc == 1.0

    def test_kkt_residuals_small(self):
        rng = np.random.default_rng(8)
        table = blob_table(rng, [(-2, 0), (2, 0)], 25)
        model = train_classifier("SVC", table, seed=0)
        assert model.kkt_violation < 1e-3

    def test_three_class_vocabulary_closure(self):
        rng = np.random.default_rng(9)
        table = blob_table(rng, [(-4, 0), (0, 4), (4, 0)], 30)
        model = train_classifier("SVC", table, seed=0)
        probe = rng.uniform(-6, 6, (200, 2))
        for row in probe:
            assert model.predict(row) in table.label_vocabulary

    def test_argmax_tie_goes_to_first_class(self):
        rng = np.random.default_rng(10)
        table = blob_table(rng, [(-3, 0), (3, 0)], 30)
        model = train_classifier("SVC", table, seed=0)
        scores = model.decision_scores(np.array([[0.0, 0.0]]))
        forced = np.zeros_like(scores)
        idx = int(forced.argmax(axis=1)[0])
        assert model.label_vocabulary[idx] == model.label_vocabulary[0]


class TestLogisticRegression:
    def test_blobs_match_bayes_boundary(self):
        rng = np.random.default_rng(11)
        centers = np.array([(-3.0, -3.0), (3.0, 3.0)])
        table = blob_table(rng, centers, 50)
        model = train_classifier("LoR", table, seed=0)
        preds = np.array([model.predict(row) for row in table.features], dtype=object)
        acc = float(np.mean(preds == table.targets))
        assert acc >= 0.99
        # equal spherical covariances: the Bayes rule is the nearest mean
        d0 = np.linalg.norm(table.features - centers[0], axis=1)
        d1 = np.linalg.norm(table.features - centers[1], axis=1)
        bayes = np.where(d0 <= d1, table.label_vocabulary[0], table.label_vocabulary[1])
        assert float(np.mean(preds == bayes)) >= 0.99


class TestRfc:
    def test_majority_vote_matches_tally_oracle(self):
        rng = np.random.default_rng(12)
        table = blob_table(rng, [(-2, -2), (2, 2), (2, -2)], 25)
        model = train_classifier(ModelKind("RFC", {"n_trees": 15}), table, seed=0)
        probe = rng.uniform(-4, 4, (40, 2))
        per_tree = model.per_tree_predictions(probe)
        preds = model.predict_matrix(probe)
        for col in range(probe.shape[0]):
            counts = np.bincount(per_tree[:, col], minlength=len(table.label_vocabulary))
            assert int(preds[col]) == int(np.argmax(counts))

    def test_zero_row_class_rejected(self):
        x = np.random.default_rng(0).uniform(0, 1, (6, 2))
        table = LabeledTable(("a", "b"), x,
                             np.array(["x"] * 6, dtype=object), ("x", "y"))
        with pytest.raises(TrainingError, match="zero rows"):
            train_classifier("RFC", table, seed=0)


class TestGbc:
    def test_learns_blobs(self):
        rng = np.random.default_rng(13)
        table = blob_table(rng, [(-3, 0), (3, 0), (0, 3)], 30)
        model = train_classifier(ModelKind("GBC", {"n_stages": 40}), table, seed=0)
        preds = [model.predict(row) for row in table.features]
        acc = np.mean([p == t for p, t in zip(preds, table.targets)])
        assert acc >= 0.95


class TestDeterminismAndClosure:
    @pytest.mark.parametrize("kind", REGRESSOR_KINDS)
    def test_regressors_deterministic(self, kind):
        rng = np.random.default_rng(14)
        x = rng.uniform(-1, 1, (60, 3))
        y = x[:, 0] - x[:, 2] ** 2
        table = regression_table(x, y)
        hp = {"n_trees": 10} if kind in ("RFR",) else \
             {"n_stages": 20} if kind == "GBR" else {}
        probe = rng.uniform(-1, 1, (20, 3))
        a = train_regressor(ModelKind(kind, hp), table, seed=5).predict_matrix(probe)
        b = train_regressor(ModelKind(kind, hp), table, seed=5).predict_matrix(probe)
        assert np.array_equal(a, b)

    @pytest.mark.parametrize("kind", CLASSIFIER_KINDS)
    def test_classifiers_deterministic_and_closed(self, kind):
        rng = np.random.default_rng(15)
        table = blob_table(rng, [(-2, 1), (2, -1), (0, 3)], 20)
        hp = {"n_trees": 10} if kind == "RFC" else \
             {"n_stages": 15} if kind == "GBC" else \
             {"iterations": 500} if kind == "LoR" else {}
        probe = rng.uniform(-4, 4, (30, 2))
        m1 = train_classifier(ModelKind(kind, hp), table, seed=3)
        m2 = train_classifier(ModelKind(kind, hp), table, seed=3)
        p1 = [m1.predict(r) for r in probe]
        p2 = [m2.predict(r) for r in probe]
        assert p1 == p2
        assert all(p in table.label_vocabulary for p in p1)


class TestPredictValidation:
    def test_arity_and_finiteness(self):
        x = np.linspace(0, 1, 20).reshape(-1, 1)
        model = train_regressor("LR", regression_table(x, 2 * x[:, 0]), seed=0)
        with pytest.raises(ValueError):
            model.predict([1.0, 2.0])
        with pytest.raises(ValueError):
            model.predict([float("nan")])

    def test_kind_table_mismatch(self):
        x = np.linspace(0, 1, 20).reshape(-1, 1)
        table = regression_table(x, 2 * x[:, 0])
        with pytest.raises(TrainingError):
            train_classifier("SVC", table, seed=0)
        with pytest.raises(TrainingError):
            train_regressor("SVC", table, seed=0)


class TestSaveLoad:
    @pytest.mark.parametrize("kind", REGRESSOR_KINDS)
    def test_regressor_round_trip(self, kind, tmp_path):
        rng = np.random.default_rng(16)
        x = rng.uniform(-1, 1, (50, 2))
        y = 3 * x[:, 0] + x[:, 1]
        hp = {"n_trees": 5} if kind == "RFR" else \
             {"n_stages": 10} if kind == "GBR" else {}
        model = train_regressor(ModelKind(kind, hp), regression_table(x, y), seed=2)
        path = tmp_path / "model.json"
        save_model(model, path)
        loaded = load_model(path)
        probe = rng.uniform(-1, 1, (15, 2))
        assert np.allclose(model.predict_matrix(probe), loaded.predict_matrix(probe))

    @pytest.mark.parametrize("kind", CLASSIFIER_KINDS)
    def test_classifier_round_trip(self, kind, tmp_path):
        rng = np.random.default_rng(17)
        table = blob_table(rng, [(-2, 0), (2, 0)], 20)
        hp = {"n_trees": 5} if kind == "RFC" else \
             {"n_stages": 10} if kind == "GBC" else \
             {"iterations": 300} if kind == "LoR" else {}
        model = train_classifier(ModelKind(kind, hp), table, seed=2)
        path = tmp_path / "model.json"
        save_model(model, path)
        loaded = load_model(path)
        probe = rng.uniform(-3, 3, (15, 2))
        assert [model.predict(r) for r in probe] == [loaded.predict(r) for r in probe]

    def test_json_is_self_describing(self, tmp_path):
        rng = np.random.default_rng(18)
        table = blob_table(rng, [(-2, 0), (2, 0)], 15)
        model = train_classifier(ModelKind("LoR", {"iterations": 100}), table, seed=9)
        doc = model.to_json()
        assert doc["kind"] == "LoR"
        assert doc["label_vocabulary"] == list(table.label_vocabulary)
        assert doc["training_seed"] == 9
        clone = model_from_json(json.loads(json.dumps(doc)))
        assert clone.kind.hyperparams == model.kind.hyperparams


class TestStratifiedSplit:
    def test_classification_keeps_classes_on_both_sides(self):
        rng = np.random.default_rng(19)
        table = blob_table(rng, [(-2, 0), (2, 0), (0, 2)], 10)
        train, test = stratified_split(table, 0.2, seed=0)
        assert set(train.targets) == set(table.label_vocabulary)
        assert set(test.targets) == set(table.label_vocabulary)
        assert train.n_rows + test.n_rows == table.n_rows

    def test_tiny_class_rejected(self):
        x = np.random.default_rng(0).uniform(0, 1, (5, 1))
        table = LabeledTable(("a",), x,
                             np.array(["x", "x", "x", "x", "y"], dtype=object),
                             ("x", "y"))
        with pytest.raises(ValueError, match="both sides"):
            stratified_split(table, 0.2, seed=0)

    def test_regression_split_plain(self):
        x = np.arange(50.0).reshape(-1, 1)
        table = regression_table(x, x[:, 0] * 2)
        train, test = stratified_split(table, 0.2, seed=1)
        assert test.n_rows == 10
        assert train.n_rows == 40
