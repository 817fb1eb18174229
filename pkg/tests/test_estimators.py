import numpy as np
import pytest
from sklearn.base import clone

from almost_abelian import InvalidInputError
from almost_abelian.core import AlgebraSpec, decompose
from almost_abelian.estimators import DirichletEnergyFlow, GrayHervellaClassifier, HarmonicityClassifier
from almost_abelian.gray_hervella import classify
from almost_abelian.harmonicity import is_harmonic_oracle

from .helpers import random_L

L0 = np.array([[0.0, 1, 0], [1, 0, 0], [0, 0, 0]])
L2 = np.array([[0.0, 1, 0], [0, 1, 0], [0, 0, -1]])
ROT = np.array([[0.0, 0, 0], [0, 0, -1], [0, 1, 0]])


def test_harmonicity_classifier():
    rng = np.random.default_rng(0)
    Ls = [L0, L2] + [random_L(2, rng) for _ in range(8)]
    X = np.array([L.ravel() for L in Ls])
    clf = HarmonicityClassifier().fit(X)
    pred = clf.predict(X)
    assert pred[0] and not pred[1]
    assert list(pred) == [is_harmonic_oracle(decompose(AlgebraSpec(2, L))).harmonic for L in Ls]
    feats = clf.transform(X)
    assert feats.shape == (10, 3)
    assert np.allclose(feats[:, 2], 2 * feats[:, 0])  # dimension 4
    assert clf.score(X, pred) == 1.0


def test_gray_hervella_classifier():
    X = np.array([L0.ravel(), L2.ravel(), np.zeros(9)])
    clf = GrayHervellaClassifier().fit(X)
    assert list(clf.predict(X)) == ["W", "W2", "Kaehler"]
    M = clf.predict_membership(X)
    assert M.shape == (3, 4)
    assert M[2].all() and list(M[1]) == [False, True, False, True]
    assert clone(clf).get_params() == {"tol": 1e-9}


def test_energy_flow_transformer():
    X = np.array([ROT.ravel()])
    est = DirichletEnergyFlow(n_starts=2, random_state=0, tol_grad=1e-9).fit(X)
    assert est.transform(X)[0, 0] <= 1e-10
    assert len(est.limits_[0]) == 2


def test_shape_validation():
    with pytest.raises(InvalidInputError):
        HarmonicityClassifier().fit(np.zeros((2, 8)))
    clf = HarmonicityClassifier().fit(np.zeros((1, 9)))
    with pytest.raises(InvalidInputError):
        clf.predict(np.zeros((1, 25)))


def test_six_dimensional():
    rng = np.random.default_rng(1)
    Ls = [random_L(3, rng) for _ in range(3)]
    X = np.array([L.ravel() for L in Ls])
    clf = GrayHervellaClassifier().fit(X)
    assert list(clf.predict(X)) == [classify(AlgebraSpec(3, L)).genuine for L in Ls]
    assert clf.predict_membership(X).shape == (3, 16)
