"""scikit-learn transformer over subsets of Z_m encoded as 0/1 indicator rows.

Row ``i`` of ``X`` (shape ``(n_samples, m)``) is a subset of Z_m; column
``j`` is 1 when ``j`` belongs to it. This lets sumset features sit inside a
:class:`~sklearn.pipeline.Pipeline`.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .core import ZmSet
from .engine import GenSumsetSpec, gen_sumset

__all__ = ["check_subset_indicators", "to_indicators", "from_indicators", "GeneralizedSumsetTransformer"]


def check_subset_indicators(X, modulus: int | None = None, allow_empty_rows: bool = False) -> np.ndarray:
    """Validate an indicator matrix and return it as a boolean array."""
    X = check_array(X, dtype=None, ensure_2d=True, ensure_all_finite=True)
    if not np.isin(X, (0, 1)).all():
        raise ValueError("indicator matrix entries must be 0 or 1")
    if modulus is not None and X.shape[1] != modulus:
        raise ValueError(f"X has {X.shape[1]} columns, expected modulus {modulus}")
    X = X.astype(bool)
    if not allow_empty_rows and not X.any(axis=1).all():
        raise ValueError("every row must encode a non-empty subset")
    return X


def to_indicators(sets, modulus: int) -> np.ndarray:
    out = np.zeros((len(sets), modulus), dtype=np.uint8)
    for i, s in enumerate(sets):
        out[i, list(s)] = 1
    return out


def from_indicators(X) -> list[ZmSet]:
    X = check_subset_indicators(X, allow_empty_rows=True)
    m = X.shape[1]
    return [ZmSet.from_elements(np.flatnonzero(row).tolist(), m) for row in X]


class GeneralizedSumsetTransformer(TransformerMixin, BaseEstimator):
    """Replace each subset of Z_m by its generalized sumset (or its size).

    Parameters
    ----------
    h : int
        Number of summands.
    r : int
        Distinctness threshold.
    mode : {"ge", "le", "eq"}
        At least, at most or exactly ``r`` distinct summands.
    output : {"indicator", "size"}
        ``"indicator"`` returns an ``(n_samples, m)`` 0/1 matrix,
        ``"size"`` a single column of cardinalities.
    """

    def __init__(self, h=2, r=1, mode="ge", output="indicator"):
        self.h = h
        self.r = r
        self.mode = mode
        self.output = output

    def fit(self, X, y=None):
        X = check_subset_indicators(X)
        if self.output not in ("indicator", "size"):
            raise ValueError(f"output must be 'indicator' or 'size', got {self.output!r}")
        self.spec_ = GenSumsetSpec(self.h, self.r, self.mode)
        self.modulus_ = X.shape[1]
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "spec_")
        X = check_subset_indicators(X, modulus=self.modulus_)
        m, spec = self.modulus_, self.spec_
        sums = [gen_sumset(ZmSet.from_elements(np.flatnonzero(row).tolist(), m), spec) for row in X]
        if self.output == "size":
            return np.array([[len(S)] for S in sums], dtype=np.int64)
        return to_indicators(sums, m)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "spec_")
        if self.output == "size":
            return np.array([f"sumset_size_h{self.h}_r{self.r}_{self.mode}"], dtype=object)
        return np.array([f"sum_{j}" for j in range(self.modulus_)], dtype=object)
