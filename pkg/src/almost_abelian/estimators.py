"""scikit-learn style wrappers.

Each sample is one algebra given as the row-major flattening of ``L``
(``(2n-1)^2`` features); ``n`` is read off the feature count at ``fit``.
The verdicts themselves need no training, so ``fit`` only validates shapes.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from ._validation import DEFAULT_TOL, ScalarContext
from .core import AlgebraSpec, decompose
from .exceptions import InvalidInputError
from .flow import run_flow, random_compatible_J
from .gray_hervella import CLASSES, CLASSES_DIM4, classify
from .harmonicity import condition_i, condition_ii, is_harmonic_general
from .tensors import harmonic_commutator

__all__ = ["HarmonicityClassifier", "GrayHervellaClassifier", "DirichletEnergyFlow"]


def _half_dim(n_features):
    k = int(round(np.sqrt(n_features)))
    if k * k != n_features or k % 2 == 0 or k < 3:
        raise InvalidInputError(f"{n_features} features is not (2n-1)^2 for any n >= 2")
    return (k + 1) // 2


class _AlgebraEstimator(BaseEstimator):
    def __init__(self, tol=DEFAULT_TOL):
        self.tol = tol

    def fit(self, X, y=None):
        X = check_array(X)
        self.n_features_in_ = X.shape[1]
        self.n_ = _half_dim(X.shape[1])
        return self

    def _decs(self, X):
        check_is_fitted(self, "n_")
        X = check_array(X)
        if X.shape[1] != self.n_features_in_:
            raise InvalidInputError(f"expected {self.n_features_in_} features, got {X.shape[1]}")
        k = 2 * self.n_ - 1
        ctx = ScalarContext("float", self.tol)
        return [decompose(AlgebraSpec(self.n_, row.reshape(k, k), ctx)) for row in X]


class HarmonicityClassifier(ClassifierMixin, _AlgebraEstimator):
    """Predicts whether the standard ``J`` is harmonic.

    ``transform`` gives the residual features ``(||(i)||, ||(ii)||, ||H||)``.
    """

    def fit(self, X, y=None):
        super().fit(X, y)
        self.classes_ = np.array([False, True])
        return self

    def predict(self, X):
        return np.array([is_harmonic_general(d).harmonic for d in self._decs(X)])

    def transform(self, X):
        rows = []
        for d in self._decs(X):
            rows.append([np.linalg.norm(condition_i(d)), np.linalg.norm(condition_ii(d)),
                         np.linalg.norm(harmonic_commutator(d))])
        return np.array(rows)


class GrayHervellaClassifier(ClassifierMixin, _AlgebraEstimator):
    """Predicts the genuine Gray-Hervella class name.

    In dimension 4 only the four surviving classes appear in ``classes_``.
    """

    def fit(self, X, y=None):
        super().fit(X, y)
        self.classes_ = np.array(CLASSES_DIM4 if self.n_ == 2 else CLASSES)
        return self

    def predict(self, X):
        return np.array([classify(d).genuine for d in self._decs(X)], dtype=object)

    def predict_membership(self, X):
        """Boolean matrix, one column per entry of ``classes_``."""
        return np.array([[classify(d).memberships[c] for c in self.classes_] for d in self._decs(X)])


class DirichletEnergyFlow(TransformerMixin, _AlgebraEstimator):
    """Runs the energy flow from ``n_starts`` random compatible structures.

    After ``fit``, ``limits_[i]`` holds the terminal ``J`` matrices for sample
    ``i`` and ``energies_[i]`` their energies.  ``transform`` returns the
    smallest limit energy per sample.
    """

    def __init__(self, n_starts=1, tol_grad=1e-8, max_steps=100_000, random_state=None, tol=DEFAULT_TOL):
        self.n_starts = n_starts
        self.tol_grad = tol_grad
        self.max_steps = max_steps
        self.random_state = random_state
        self.tol = tol

    def fit(self, X, y=None):
        super().fit(X, y)
        rng = np.random.default_rng(self.random_state)
        self.limits_, self.energies_ = [], []
        for d in self._decs(X):
            Js, Es = [], []
            for _ in range(self.n_starts):
                res = run_flow(d, random_compatible_J(self.n_, rng), tol_grad=self.tol_grad,
                               max_steps=self.max_steps)
                Js.append(res.state.J)
                Es.append(res.state.energy)
            self.limits_.append(Js)
            self.energies_.append(np.array(Es))
        return self

    def transform(self, X):
        check_is_fitted(self, "energies_")
        X = check_array(X)
        if X.shape[0] != len(self.energies_):
            raise InvalidInputError("transform expects the samples passed to fit")
        return np.array([[e.min()] for e in self.energies_])
