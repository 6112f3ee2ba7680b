import io

import numpy as np
import pytest

from plotarc.svm import (
    LinearModel,
    StandardizationParams,
    TrainingError,
    cross_validate,
    f1_score,
    hinge_objective,
    load_model,
    predict,
    predict_many,
    save_model,
    standardize_fit,
    stratified_folds,
    train_linear_svm,
)


def separable_set(seed=0, per_class=20, spread=0.3):
    rng = np.random.default_rng(seed)
    pos = rng.normal([2.0, 0.0], spread, size=(per_class, 2))
    neg = rng.normal([-2.0, 0.0], spread, size=(per_class, 2))
    X = np.vstack([pos, neg])
    y = np.array([1] * per_class + [-1] * per_class)
    return X, y


class TestStandardize:
    def test_two_point_statistics(self):
        params = standardize_fit(np.array([[0.0, 5.0], [2.0, 5.0]]))
        assert params.means[0] == 1.0 and params.scales[0] == 1.0

    def test_constant_column_guarded(self):
        params = standardize_fit(np.full((4, 2), 5.0))
        np.testing.assert_array_equal(params.means, [5.0, 5.0])
        np.testing.assert_array_equal(params.scales, [1.0, 1.0])

    def test_transformed_training_matrix_centered(self):
        rng = np.random.default_rng(1)
        X = rng.random((30, 5)) * 10
        params = standardize_fit(X)
        Xs = params.transform(X)
        np.testing.assert_allclose(Xs.mean(axis=0), 0.0, atol=1e-9)
        np.testing.assert_allclose(Xs.std(axis=0), 1.0, atol=1e-9)

    def test_too_few_rows(self):
        with pytest.raises(TrainingError):
            standardize_fit(np.zeros((1, 3)))


class TestTrain:
    def test_separable_perfect_training_accuracy(self):
        X, y = separable_set()
        model = train_linear_svm(X, y, seed=7)
        assert np.array_equal(predict_many(model, X), y)

    def test_deterministic(self):
        X, y = separable_set()
        a = train_linear_svm(X, y, seed=7)
        b = train_linear_svm(X, y, seed=7)
        np.testing.assert_array_equal(a.weights, b.weights)
        assert a.bias == b.bias

    def test_flipped_labels_negate_decision(self):
        X, y = separable_set(seed=3)
        a = train_linear_svm(X, y, seed=7)
        b = train_linear_svm(X, -y, seed=7)
        for x in X:
            assert predict(a, x) == -predict(b, x)

    def test_single_class_rejected(self):
        X, _ = separable_set()
        with pytest.raises(TrainingError):
            train_linear_svm(X, np.ones(X.shape[0]))

    def test_objective_decreases(self):
        X, y = separable_set(seed=5)
        lam = 1.0 / X.shape[0]
        initial = hinge_objective(np.zeros(2), 0.0, X, y, lam)
        model = train_linear_svm(X, y, C=1.0, epochs=50, seed=1)
        final = hinge_objective(model.weights, model.bias, X, y, lam)
        assert final < initial


class TestPredict:
    def make_model(self, w, b):
        w = np.asarray(w, dtype=float)
        return LinearModel(
            w, b, 1.0, 1, 0, StandardizationParams(np.zeros(w.shape), np.ones(w.shape))
        )

    def test_positive_side(self):
        assert predict(self.make_model([1.0, 0.0], 0.0), np.array([3.0, 5.0])) == 1

    def test_negative_side(self):
        assert predict(self.make_model([1.0, 0.0], 0.0), np.array([-3.0, 5.0])) == -1

    def test_on_hyperplane_tiebreak_positive(self):
        assert predict(self.make_model([1.0, 0.0], 0.0), np.array([0.0, 9.0])) == 1

    def test_dimension_mismatch(self):
        with pytest.raises(TrainingError):
            predict(self.make_model([1.0, 0.0], 0.0), np.array([1.0, 2.0, 3.0]))

    def test_positive_rescaling_invariance(self):
        model = self.make_model([1.5, -2.0], 0.7)
        scaled = self.make_model([1.5 * 13, -2.0 * 13], 0.7 * 13)
        rng = np.random.default_rng(2)
        for x in rng.normal(size=(50, 2)):
            assert predict(model, x) == predict(scaled, x)


class TestF1:
    def test_perfect(self):
        y = np.array([1, -1, 1, -1])
        assert f1_score(y, y) == 1.0

    def test_all_positive_half_gold(self):
        gold = np.array([1, 1, -1, -1])
        preds = np.ones(4, dtype=int)
        assert f1_score(preds, gold) == pytest.approx(2 / 3)

    def test_no_predicted_positives(self):
        gold = np.array([1, 1, -1, -1])
        preds = -np.ones(4, dtype=int)
        assert f1_score(preds, gold) == 0.0

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            f1_score(np.array([1]), np.array([1, -1]))


class TestCrossValidate:
    def test_stratified_fold_sizes(self):
        X, y = separable_set(per_class=20)
        metrics = cross_validate(X, y, folds=10, seed=42, epochs=20)
        assignment = np.array(metrics.fold_assignment)
        for k in range(10):
            fold = assignment == k
            assert fold.sum() == 4
            assert np.sum(fold & (y == 1)) == 2

    def test_separable_high_f1(self):
        X, y = separable_set(per_class=20)
        metrics = cross_validate(X, y, folds=10, seed=42, epochs=50)
        assert metrics.f1 >= 0.95

    def test_confusion_sums_to_corpus_size(self):
        X, y = separable_set(per_class=15)
        metrics = cross_validate(X, y, folds=5, seed=1, epochs=20)
        assert sum(metrics.confusion) == len(y)

    def test_deterministic(self):
        X, y = separable_set(per_class=12)
        a = cross_validate(X, y, folds=4, seed=9, epochs=30)
        b = cross_validate(X, y, folds=4, seed=9, epochs=30)
        assert a == b

    def test_class_smaller_than_folds_rejected(self):
        X, y = separable_set(per_class=4)
        with pytest.raises(TrainingError):
            cross_validate(X, y, folds=5)

    def test_no_leakage_from_held_out_rows(self):
        # Perturbing rows held out of fold 0 must not change the params
        # fitted on fold 0's training split.
        X, y = separable_set(per_class=10, seed=4)
        assignment = stratified_folds(y, folds=5, seed=42)
        train_mask = assignment != 0
        params = standardize_fit(X[train_mask])
        X_perturbed = X.copy()
        X_perturbed[~train_mask] += 1e6
        params_after = standardize_fit(X_perturbed[train_mask])
        np.testing.assert_array_equal(params.means, params_after.means)
        np.testing.assert_array_equal(params.scales, params_after.scales)


class TestSerialization:
    def test_roundtrip_exact(self):
        X, y = separable_set(seed=8)
        params = standardize_fit(X)
        model = train_linear_svm(params.transform(X), y, C=0.5, epochs=30, seed=3)
        model = LinearModel(model.weights, model.bias, 0.5, 30, 3, params)
        buf = io.StringIO()
        save_model(model, buf)
        buf.seek(0)
        back = load_model(buf)
        np.testing.assert_array_equal(back.weights, model.weights)
        assert back.bias == model.bias
        assert (back.C, back.epochs, back.seed) == (0.5, 30, 3)
        np.testing.assert_array_equal(back.standardization.means, params.means)
        np.testing.assert_array_equal(back.standardization.scales, params.scales)

    def test_bad_header_rejected(self):
        with pytest.raises(TrainingError):
            load_model(io.StringIO("not a model\n"))
