from fractions import Fraction

import numpy as np
import pytest
from sklearn.base import clone

from hilbeq import gotzmann_decompose
from hilbeq.estimator import HilbertSchemeEquations, PersistenceClassifier, check_context, check_points, points
from hilbeq.verify import lexsegment_point, sample_non_hilbert, sample_pgl, translate


@pytest.fixture(scope="module")
def batch(hilb2):
    good = [translate(lexsegment_point(hilb2), sample_pgl(2, s)) for s in range(3)]
    bad = [sample_non_hilbert(hilb2, s) for s in range(3)]
    return good, bad


def test_check_context():
    assert check_context("2", 2) == gotzmann_decompose([2], 2)
    assert check_context(2, 2) == check_context([2], 2)
    with pytest.raises(ValueError):
        check_context("2", 0)
    with pytest.raises(ValueError):
        check_context("2", 1.5)


def test_check_points(hilb2, batch):
    good, _ = batch
    assert len(check_points(good[0], hilb2)) == 1
    assert len(check_points(good[0].matrix, hilb2)) == 1
    assert len(check_points(np.array(good[0].matrix, dtype=object), hilb2)) == 1
    assert len(check_points([g.matrix for g in good], hilb2)) == 3
    assert len(points(hilb2, good)) == 3
    with pytest.raises(ValueError):
        check_points([], hilb2)
    with pytest.raises(ValueError):
        check_points(lexsegment_point(gotzmann_decompose([1], 2)), hilb2)


def test_equations_transformer(batch):
    good, bad = batch
    est = HilbertSchemeEquations(p="2", n=2, family="blmr-t1", dedup=False).fit()
    assert est.n_equations_ == 12
    vals = est.transform(good + bad)
    assert vals.shape == (6, 12) and vals.dtype == object
    assert isinstance(vals[0, 0], Fraction)
    assert not vals[:3].any()


def test_equations_predict(batch):
    good, bad = batch
    est = HilbertSchemeEquations(family="bayer", tuples=None, budget=60).fit()
    assert est.predict(good).all()
    assert not est.predict(bad).any()


def test_blmr_full_default_polys(batch):
    good, _ = batch
    est = HilbertSchemeEquations(family="blmr-full", polys=["D[3,5]*D[4,6]-D[2,5]*D[5,6]"]).fit()
    assert est.n_equations_ == 792
    assert est.predict(good[:1]).all()


def test_bad_family():
    with pytest.raises(ValueError):
        HilbertSchemeEquations(family="nope").fit()


def test_unfitted():
    from sklearn.exceptions import NotFittedError
    with pytest.raises(NotFittedError):
        HilbertSchemeEquations().transform([[0]])


def test_classifier(batch):
    good, bad = batch
    clf = PersistenceClassifier(p="2", n=2).fit()
    assert list(clf.classes_) == [False, True]
    dec = clf.decision_function(good + bad)
    assert (dec[:3] == 0).all() and (dec[3:] < 0).all()
    assert clf.predict(good + bad).tolist() == [True] * 3 + [False] * 3
    feats = clf.transform(good)
    assert feats.shape == (3, 4)
    assert (feats[:, 0] == 8).all() and (feats[:, 3] == 1).all()
    assert clf.score(good + bad, [True] * 3 + [False] * 3) == 1.0
    assert clf.fit_transform(good).shape == (3, 4)


def test_sklearn_params():
    est = HilbertSchemeEquations(p="3", n=2, family="blmr-t2")
    assert est.get_params()["family"] == "blmr-t2"
    c = clone(est)
    assert c.get_params() == est.get_params()
    c.set_params(family="ik", budget=4)
    assert c.fit().n_equations_ <= 4
    assert clone(PersistenceClassifier(p="1", n=2)).get_params() == {"p": "1", "n": 2}
