import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from successrules import AttributeSchema, AttributeSpec, Dichotomizer, SuccessRuleMiner, load_case_study


def synthetic(n=4000, seed=0):
    rng = np.random.default_rng(seed)
    X = rng.integers(0, 2, size=(n, 4))
    y = (X[:, 0] & X[:, 2]) | (X[:, 0] & X[:, 1] & X[:, 3])
    return X, y


def test_fit_predict_recovers_rule():
    X, y = synthetic()
    miner = SuccessRuleMiner(mode="rate", pct_threshold=50, attribute_names=list("ESTJ")).fit(X, y)
    assert miner.expression_ == "ET + ESJ"
    np.testing.assert_array_equal(miner.predict(X), y)
    assert miner.score(X, y) == 1.0


def test_transform_columns_follow_rules():
    X, y = synthetic()
    miner = SuccessRuleMiner(mode="rate", pct_threshold=50).fit(X, y)
    act = miner.transform(X)
    assert act.shape == (len(X), 2)
    np.testing.assert_array_equal(act.any(axis=1), y.astype(bool))


def test_case_study_via_frequency():
    miner = SuccessRuleMiner(min_successes=70, attribute_names=list("ESTJ"))
    assert miner.fit_frequency(load_case_study()).expression_ == "ET + ESJ"
    miner.set_params(coverage_target=80)
    assert miner.fit_frequency(load_case_study()).expression_ == "ET"
    assert miner.rules_.literal_count == 5


def test_params_and_clone():
    miner = SuccessRuleMiner(pct_threshold=12.5, coverage_target=90)
    params = clone(miner).get_params()
    assert params["pct_threshold"] == 12.5 and params["coverage_target"] == 90


def test_input_validation():
    miner = SuccessRuleMiner()
    with pytest.raises(NotFittedError):
        miner.predict([[0, 1]])
    with pytest.raises(ValueError):
        miner.fit([[0, 2]], [1])
    with pytest.raises(ValueError):
        miner.fit([[0, 1]], [3])
    X, y = synthetic(200)
    miner.fit(X, y)
    with pytest.raises(ValueError):
        miner.predict([[0, 1]])
    with pytest.raises(ValueError):
        SuccessRuleMiner(attribute_names=["a"]).fit(X, y)


def test_all_failure_predicts_zero():
    X = np.array([[0, 1], [1, 0]])
    miner = SuccessRuleMiner(mode="rate", pct_threshold=50).fit(X, [0, 0])
    assert miner.expression_ == "FALSE"
    np.testing.assert_array_equal(miner.predict(X), [0, 0])
    assert miner.transform(X).shape == (2, 0)


def test_dichotomizer_in_pipeline():
    schema = AttributeSchema((
        AttributeSpec("age", "numeric-threshold", threshold=40, polarity="below"),
        AttributeSpec("income", "numeric-threshold", threshold=50),
    ))
    X = np.array([[30, 60], [35, 80], [50, 60], [45, 20], [20, 10]] * 10, dtype=float)
    y = np.array([1, 1, 0, 0, 0] * 10)
    bits = Dichotomizer(schema).fit_transform(X)
    np.testing.assert_array_equal(bits[:5], [[1, 1], [1, 1], [0, 1], [0, 0], [1, 0]])
    model = make_pipeline(Dichotomizer(schema),
                          SuccessRuleMiner(mode="rate", pct_threshold=50, attribute_names=["a", "i"]))
    model.fit(X, y)
    assert model[-1].expression_ == "ai"
    np.testing.assert_array_equal(model.predict(X), y)
