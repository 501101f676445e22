import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from toricinterp.errors import ValidationError
from toricinterp.estimators import NegativeClassSearch, WeightTripleClassifier, check_triples

X = np.array([[1, 2, 3], [25, 29, 72], [9, 10, 13], [7, 15, 26]])


def test_classifier_predicts_statuses():
    clf = WeightTripleClassifier().fit(X)
    assert list(clf.predict(X)) == ["MDS", "NOT_MDS", "UNKNOWN", "NOT_MDS"]
    assert clf.n_features_in_ == 3
    assert set(clf.classes_) == {"MDS", "NOT_MDS", "UNKNOWN"}


def test_classifier_score_against_labels():
    clf = WeightTripleClassifier().fit(X)
    assert clf.score(X, ["MDS", "NOT_MDS", "UNKNOWN", "NOT_MDS"]) == 1.0


def test_params_and_clone():
    clf = WeightTripleClassifier(search_depth=5)
    assert clf.get_params() == {"search_depth": 5, "n_jobs": 1}
    other = clone(clf).set_params(search_depth=7)
    assert other.search_depth == 7 and clf.search_depth == 5


def test_not_fitted():
    with pytest.raises(NotFittedError):
        WeightTripleClassifier().predict(X)
    with pytest.raises(NotFittedError):
        NegativeClassSearch().transform(X)


def test_verdicts_carry_search_evidence():
    clf = WeightTripleClassifier(search_depth=20).fit(X)
    v = clf.verdicts(X[2:3])[0]
    assert v.no_negative_class_up_to == 20


def test_negative_class_transformer():
    search = NegativeClassSearch(max_d=3)
    out = search.fit_transform(np.array([[1, 1, 2], [1, 1, 1]]))
    assert out.tolist() == [[1, 1], [0, 0]]
    assert list(search.get_feature_names_out()) == ["neg_d", "neg_m"]


def test_pipeline():
    pipe = make_pipeline(NegativeClassSearch(max_d=3))
    assert pipe.fit_transform(np.array([[1, 1, 2]])).shape == (1, 2)


@pytest.mark.parametrize("bad", [
    np.array([[1, 2]]),
    np.array([[2, 4, 5]]),
    np.array([[1.5, 2, 3]]),
    np.array([[0, 1, 2]]),
])
def test_check_triples_rejects(bad):
    with pytest.raises(ValidationError):
        check_triples(bad)


def test_check_triples_accepts_integral_floats():
    assert check_triples(np.array([[1.0, 2.0, 3.0]])).dtype.kind == "i"
