"""Input checks shared by the estimator layer."""
from __future__ import annotations

import numpy as np
from sklearn.utils.validation import check_array, check_X_y

from .ingest import MAX_ATTRIBUTES


def _check_binary(X: np.ndarray, what: str) -> np.ndarray:
    if X.size and not np.isin(X, (0, 1)).all():
        raise ValueError(f"{what} must contain only 0 and 1")
    return X.astype(np.int64, copy=False)


def check_binary_matrix(X) -> np.ndarray:
    X = check_array(X, dtype=None, ensure_all_finite=True)
    if X.shape[1] > MAX_ATTRIBUTES:
        raise ValueError(f"at most {MAX_ATTRIBUTES} attributes are supported, got {X.shape[1]}")
    return _check_binary(X, "X")


def check_binary_xy(X, y):
    X, y = check_X_y(X, y, dtype=None, ensure_all_finite=True)
    if X.shape[1] > MAX_ATTRIBUTES:
        raise ValueError(f"at most {MAX_ATTRIBUTES} attributes are supported, got {X.shape[1]}")
    return _check_binary(X, "X"), _check_binary(np.asarray(y), "y")


def encode_rows(X: np.ndarray) -> np.ndarray:
    """Pack each binary row into its combination index (column 0 is the high bit)."""
    k = X.shape[1]
    weights = 1 << np.arange(k - 1, -1, -1, dtype=np.int64)
    return X @ weights
