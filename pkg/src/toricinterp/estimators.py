"""scikit-learn compatible wrappers.

``X`` is an integer array of shape (n_samples, 3), one weight triple per row.
The estimators are stateless apart from the validated feature count, so
``fit`` only checks its input; they exist so that triple classification and
negative-class search compose with pipelines, ``cross_val_score``, joblib
parallelism and ``get_params``/``set_params``.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .classify import MDS, NOT_MDS, UNKNOWN, classify, find_negative_classes, validate_triple
from .errors import ValidationError
from .exact import PRIMES

__all__ = ["NegativeClassSearch", "WeightTripleClassifier", "check_triples"]


def check_triples(X) -> np.ndarray:
    """Validate X as rows of positive, pairwise coprime integer triples."""
    X = check_array(X, dtype=None, ensure_2d=True)
    if X.shape[1] != 3:
        raise ValidationError(f"expected 3 columns (a, b, c), got {X.shape[1]}")
    if not np.issubdtype(X.dtype, np.integer):
        if not np.all(np.mod(X, 1) == 0):
            raise ValidationError("weights must be integers")
        X = X.astype(np.int64)
    for row in X:
        validate_triple(*row)
    return X


class WeightTripleClassifier(ClassifierMixin, BaseEstimator):
    """Predicts "MDS", "NOT_MDS" or "UNKNOWN" for each triple.

    Parameters
    ----------
    search_depth : int, default=0
        Degrees searched for negative classes when no rule applies.
        Search evidence only ever annotates UNKNOWN verdicts.
    n_jobs : int, default=1
        Workers for the per-degree search.
    """

    def __init__(self, search_depth=0, n_jobs=1):
        self.search_depth = search_depth
        self.n_jobs = n_jobs

    def fit(self, X, y=None):
        X = check_triples(X)
        self.n_features_in_ = X.shape[1]
        self.classes_ = np.array([MDS, NOT_MDS, UNKNOWN])
        return self

    def verdicts(self, X):
        check_is_fitted(self, "classes_")
        X = check_triples(X)
        return [
            classify(validate_triple(*row), self.search_depth, PRIMES, self.n_jobs)
            for row in X
        ]

    def predict(self, X):
        return np.array([v.status for v in self.verdicts(X)], dtype=object)


class NegativeClassSearch(TransformerMixin, BaseEstimator):
    """Maps each triple to (d, m) of its first negative class, or (0, 0).

    Parameters
    ----------
    max_d : int, default=50
        Largest degree d tested.
    """

    def __init__(self, max_d=50, n_jobs=1):
        self.max_d = max_d
        self.n_jobs = n_jobs

    def fit(self, X, y=None):
        X = check_triples(X)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = check_triples(X)
        out = np.zeros((X.shape[0], 2), dtype=np.int64)
        for k, row in enumerate(X):
            res = find_negative_classes(validate_triple(*row), self.max_d, PRIMES, self.n_jobs)
            if res.hits:
                out[k] = res.hits[0].d, res.hits[0].m
        return out

    def get_feature_names_out(self, input_features=None):
        return np.array(["neg_d", "neg_m"], dtype=object)
