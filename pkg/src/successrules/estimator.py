"""scikit-learn style wrappers around the functional pipeline."""
from __future__ import annotations

from typing import Optional, Sequence

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from ._validation import check_binary_matrix, check_binary_xy, encode_rows
from .coverage import greedy_filter
from .ingest import AttributeSchema, ClassifyConfig, FrequencyTable, build_frequency_table, classify
from .minimize import RuleSet, format_rules, minimize


class SuccessRuleMiner(ClassifierMixin, BaseEstimator):
    """Learn a minimal sum-of-products success rule from binary observations.

    ``fit`` tallies each attribute combination, marks combinations whose
    success percentage reaches ``pct_threshold`` (and that have at least
    ``min_successes`` successes) as successes, and minimizes the resulting
    truth table. With ``coverage_target`` set, prediction uses only the rules
    the greedy coverage filter keeps.

    Parameters
    ----------
    mode : {"share", "rate"}
    pct_threshold : float
    min_successes : int
    coverage_target : float or None
        Percent of covered success mass the kept rules must reach.
    attribute_names : sequence of str or None
        Names used when formatting rules; defaults to x0, x1, ...

    Attributes
    ----------
    schema_, frequency_, truth_table_, rules_, selected_rules_, classes_, n_features_in_
    """

    def __init__(self, mode: str = "share", pct_threshold: float = 7.0, min_successes: int = 0,
                 coverage_target: Optional[float] = None,
                 attribute_names: Optional[Sequence[str]] = None):
        self.mode = mode
        self.pct_threshold = pct_threshold
        self.min_successes = min_successes
        self.coverage_target = coverage_target
        self.attribute_names = attribute_names

    def _schema(self, k: int) -> AttributeSchema:
        names = self.attribute_names
        if names is None:
            names = [f"x{i}" for i in range(k)]
        if len(names) != k:
            raise ValueError(f"attribute_names has {len(names)} entries for {k} columns")
        return AttributeSchema.from_names(names)

    def fit(self, X, y):
        X, y = check_binary_xy(X, y)
        schema = self._schema(X.shape[1])
        observations = zip(encode_rows(X).tolist(), y.tolist())
        return self.fit_frequency(build_frequency_table(observations, schema))

    def fit_frequency(self, freq: FrequencyTable):
        """Fit directly from an already tallied frequency table."""
        if self.coverage_target is not None and not 0 < self.coverage_target <= 100:
            raise ValueError("coverage_target must lie in (0, 100]")
        cfg = ClassifyConfig(self.mode, self.pct_threshold, self.min_successes)
        self.schema_ = freq.schema
        self.frequency_ = freq
        self.truth_table_ = classify(freq, cfg)
        self.rules_ = minimize(self.truth_table_)
        if self.coverage_target is not None and len(self.rules_) and freq.total_successes:
            kept = greedy_filter(self.rules_, freq, self.coverage_target).rules
            self.selected_rules_ = RuleSet(freq.schema, kept)
        else:
            self.selected_rules_ = self.rules_
        self.classes_ = np.array([0, 1])
        self.n_features_in_ = freq.schema.k
        return self

    def _rows(self, X) -> np.ndarray:
        check_is_fitted(self, "rules_")
        X = check_binary_matrix(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, expected {self.n_features_in_}")
        return X

    def _activations(self, X) -> np.ndarray:
        X = self._rows(X)
        rules = self.selected_rules_
        out = np.zeros((X.shape[0], len(rules)), dtype=np.int64)
        for j, rule in enumerate(rules):
            # a row matches a cube when every fixed attribute has the fixed value
            out[:, j] = (encode_rows(X) & rule.care_mask) == rule.values
        return out

    def transform(self, X) -> np.ndarray:
        """One 0/1 column per selected rule, in the rule set's order."""
        return self._activations(X)

    def predict(self, X) -> np.ndarray:
        return self.transform(X).any(axis=1).astype(np.int64)

    @property
    def expression_(self) -> str:
        check_is_fitted(self, "rules_")
        return format_rules(self.selected_rules_)


class Dichotomizer(TransformerMixin, BaseEstimator):
    """Map raw attribute columns to bits using an attribute schema.

    Columns must follow the schema's attribute order. Stateless; ``fit`` only
    records the column count.
    """

    def __init__(self, schema: Optional[AttributeSchema] = None):
        self.schema = schema

    def fit(self, X, y=None):
        if self.schema is None:
            raise ValueError("Dichotomizer needs a schema")
        X = check_array(X, dtype=None, ensure_all_finite=False)
        if X.shape[1] != self.schema.k:
            raise ValueError(f"X has {X.shape[1]} columns, schema has {self.schema.k}")
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "n_features_in_")
        X = check_array(X, dtype=None, ensure_all_finite=False)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} columns, expected {self.n_features_in_}")
        attrs = self.schema.attributes
        return np.array([[attrs[j].to_bit(v) for j, v in enumerate(row)] for row in X],
                        dtype=np.int64).reshape(X.shape[0], len(attrs))
