"""Scikit-learn style estimators wrapping the transform builders.

fit() takes the graph adjacency (dense symmetric matrix or a Graph) and
performs the eigendecompositions; transform() maps batches of row
signals through the composed operator. All estimators are stateless
after fit apart from the cached spectra, so transform is safe to call
concurrently.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .errors import ValidationError
from .graph import Graph, eigendecompose_adjacency
from .params import ParamMatrix
from .spectral import DEFAULT_STRATEGY, ChirpStrategy, diagonalize_gft, gft_power
from .transforms import build_cddhfs, build_cmccm, inverse_by_params
from .validation import check_signal_batch


def _as_graph(X) -> Graph:
    if isinstance(X, Graph):
        return X
    return Graph(np.asarray(X, dtype=float))


class GraphFourierTransform(BaseEstimator, TransformerMixin):
    """Adjacency-based graph Fourier transform F = V^T."""

    def fit(self, X, y=None):
        self.graph_ = _as_graph(X)
        self.spectrum_ = eigendecompose_adjacency(self.graph_)
        self.operator_ = self.spectrum_.eigenvectors.T
        return self

    def _check_fitted(self):
        if not hasattr(self, "operator_"):
            raise ValidationError("estimator is not fitted; call fit(adjacency) first")

    def transform(self, X):
        self._check_fitted()
        sig = check_signal_batch(X, self.graph_.n)
        return sig @ self.operator_.T

    def inverse_transform(self, X):
        self._check_fitted()
        sig = check_signal_batch(X, self.graph_.n)
        return sig @ self.operator_


class GraphLinearCanonicalTransform(BaseEstimator, TransformerMixin):
    """Graph linear canonical transform with parameters (a, b, c, d).

    Parameters
    ----------
    a, b, c, d : float
        Unimodular parameter quadruple (ad - bc = 1).
    method : {"cmccm", "cddhfs"}
        Chirp-decomposition construction (default) or the Iwasawa-style
        scaling construction.
    strategy : str or ChirpStrategy
        How chirp factors act; see ChirpStrategy.
    b0_form : {"eta", "mu"}
        Which b = 0 factorization the cmccm method uses.
    dispatch_special : bool
        Route exact special-case matrices (identity, F, F^-1, chirp)
        around the general construction.
    """

    def __init__(
        self,
        a: float = 1.0,
        b: float = 0.0,
        c: float = 0.0,
        d: float = 1.0,
        method: str = "cmccm",
        strategy=DEFAULT_STRATEGY,
        b0_form: str = "eta",
        dispatch_special: bool = True,
    ):
        self.a = a
        self.b = b
        self.c = c
        self.d = d
        self.method = method
        self.strategy = strategy
        self.b0_form = b0_form
        self.dispatch_special = dispatch_special

    def _params(self) -> ParamMatrix:
        return ParamMatrix(float(self.a), float(self.b), float(self.c), float(self.d))

    def fit(self, X, y=None):
        m = self._params()
        strategy = ChirpStrategy(self.strategy)
        self.graph_ = _as_graph(X)
        spec = eigendecompose_adjacency(self.graph_)
        self.gft_spectrum_ = diagonalize_gft(spec)
        if self.method == "cmccm":
            self.operator_ = build_cmccm(
                self.gft_spectrum_, m, strategy,
                b0_form=self.b0_form, dispatch=self.dispatch_special,
            )
            self.inverse_operator_ = inverse_by_params(
                self.gft_spectrum_, m, strategy,
                b0_form=self.b0_form, dispatch=self.dispatch_special,
            )
        elif self.method == "cddhfs":
            self.operator_ = build_cddhfs(self.graph_, self.gft_spectrum_, m, strategy)
            self.inverse_operator_ = build_cddhfs(
                self.graph_, self.gft_spectrum_, ParamMatrix(m.d, -m.b, -m.c, m.a), strategy
            )
        else:
            raise ValidationError(f"unknown method {self.method!r}")
        return self

    def _check_fitted(self):
        if not hasattr(self, "operator_"):
            raise ValidationError("estimator is not fitted; call fit(adjacency) first")

    def transform(self, X):
        """Apply the transform to each row signal; returns complex output."""
        self._check_fitted()
        sig = check_signal_batch(X, self.graph_.n)
        return np.stack([self.operator_.apply(row) for row in sig])

    def inverse_transform(self, X):
        self._check_fitted()
        sig = check_signal_batch(X, self.graph_.n)
        return np.stack([self.inverse_operator_.apply(row) for row in sig])

    def operator_matrix(self) -> np.ndarray:
        self._check_fitted()
        return self.operator_.matrix


class GraphFractionalFourierTransform(GraphLinearCanonicalTransform):
    """Rotation special case, parameterized by the angle alpha (radians)."""

    def __init__(
        self,
        alpha: float = np.pi / 2,
        method: str = "cmccm",
        strategy=DEFAULT_STRATEGY,
        dispatch_special: bool = True,
    ):
        self.alpha = alpha
        super().__init__(
            method=method, strategy=strategy, dispatch_special=dispatch_special
        )

    def _params(self) -> ParamMatrix:
        return ParamMatrix.rotation(float(self.alpha))

    def spectral_operator(self) -> np.ndarray:
        """The direct eigendecomposition form F^(2*alpha/pi), for comparison."""
        self._check_fitted()
        return gft_power(self.gft_spectrum_, 2.0 * float(self.alpha) / np.pi)
