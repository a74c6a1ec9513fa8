"""scikit-learn style wrappers around the functional core.

Two kinds of estimators live here.  Coordinate transformers work on ordinary
2-D arrays (one sphere or Lie vector per row) and follow the usual
``fit`` / ``transform`` / ``inverse_transform`` contract.  The analyzers take
whole hypersurfaces as samples: ``fit`` accepts a single Legendre map or
sampled hypersurface and stores its report, while ``predict`` maps a list of
them to one label each.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .curvature import curvature_field
from .dupin import certify_dupin, isoparametric_criterion, reducibility_all
from .exceptions import InputError
from .legendre import LegendreMap, SampledHypersurface
from .linalg import IndefiniteForm
from .spheres import canonical_scale
from .transforms import LieTransform, random_lie_transform, validate


def _as_lift(X) -> LegendreMap:
    if isinstance(X, LegendreMap):
        return X
    if isinstance(X, SampledHypersurface):
        from .io import lift_of

        return lift_of(X)
    raise InputError(f"expected a LegendreMap or SampledHypersurface, got {type(X).__name__}")


def _as_batch(X) -> list:
    if isinstance(X, (LegendreMap, SampledHypersurface)):
        return [X]
    return list(X)


class LieCoordinateEncoder(TransformerMixin, BaseEstimator):
    """Encode oriented spheres as canonical Lie coordinates.

    Parameters
    ----------
    model : {"euclidean", "spherical"}
        Input layout.  Euclidean rows are ``(center_1, ..., center_n, radius)``
        with positive radius for the inward orientation and radius zero for a
        point.  Spherical rows are ``(center_1, ..., center_{n+1}, radius)``
        with a unit centre.

    Attributes
    ----------
    n_features_in_ : int
    n_ : int
        Dimension of the space the spheres live in.
    """

    def __init__(self, model: str = "euclidean"):
        self.model = model

    def fit(self, X, y=None):
        X = check_array(X, dtype=float)
        if self.model not in ("euclidean", "spherical"):
            raise InputError(f"unknown model {self.model!r}")
        self.n_features_in_ = X.shape[1]
        self.n_ = X.shape[1] - 1 if self.model == "euclidean" else X.shape[1] - 2
        if self.n_ < 1:
            raise InputError("rows need at least one coordinate and a radius")
        return self

    def transform(self, X):
        check_is_fitted(self, "n_")
        X = check_array(X, dtype=float)
        if X.shape[1] != self.n_features_in_:
            raise InputError("feature count differs from fit")
        p, r = X[:, :-1], X[:, -1]
        if self.model == "euclidean":
            pp = np.sum(p * p, axis=1)
            L = np.column_stack([(1 + pp - r * r) / 2, (1 - pp + r * r) / 2, p, r])
        else:
            if np.max(np.abs(np.linalg.norm(p, axis=1) - 1)) > 1e-8:
                raise InputError("spherical centres must be unit vectors")
            L = np.column_stack([np.cos(r), p, np.sin(r)])
        return np.vstack([canonical_scale(row) for row in L])

    def inverse_transform(self, L):
        check_is_fitted(self, "n_")
        L = check_array(L, dtype=float)
        if self.model == "euclidean":
            s = L[:, 0] + L[:, 1]
            if np.any(np.abs(s) <= 1e-12 * np.linalg.norm(L, axis=1)):
                raise InputError("planes and the improper point have no (center, radius) row")
            Y = L / s[:, None]
            return np.column_stack([Y[:, 2:-1], Y[:, -1]])
        sign = np.where(L[:, 0] < 0, -1.0, 1.0)
        L = L * sign[:, None]
        rho = np.arctan2(L[:, -1], L[:, 0])
        rho = np.where(rho > np.pi / 2, rho - np.pi, rho)
        p = L[:, 1:-1] / np.hypot(L[:, 0], L[:, -1])[:, None]
        return np.column_stack([p, rho])


class LieTransformer(TransformerMixin, BaseEstimator):
    """Apply a Lie sphere transformation to rows of Lie coordinates.

    Parameters
    ----------
    matrix : array-like of shape (n+3, n+3), optional
        Group element; validated on ``fit``.  When omitted a random element is
        drawn from ``seed``.
    seed : int, optional
    magnitude : float
        Scale of the random generator.
    """

    def __init__(self, matrix=None, seed=None, magnitude: float = 0.5):
        self.matrix = matrix
        self.seed = seed
        self.magnitude = magnitude

    def fit(self, X, y=None):
        X = check_array(X, dtype=float)
        self.n_features_in_ = X.shape[1]
        n = X.shape[1] - 3
        if n < 0:
            raise InputError("Lie coordinates need at least three entries")
        if self.matrix is None:
            self.transform_ = random_lie_transform(self.seed, n, self.magnitude)
        else:
            self.transform_ = LieTransform(validate(np.asarray(self.matrix, dtype=float),
                                                    IndefiniteForm.lie(n + 3)))
        return self

    def transform(self, X):
        check_is_fitted(self, "transform_")
        X = check_array(X, dtype=float)
        return X @ self.transform_.matrix.T

    def inverse_transform(self, X):
        check_is_fitted(self, "transform_")
        X = check_array(X, dtype=float)
        return X @ self.transform_.inverse().matrix.T


class _Analyzer(BaseEstimator):
    def _field(self, lift):
        return curvature_field(lift, getattr(self, "cluster_tol", None))

    def fit(self, X, y=None):
        lift = _as_lift(X)
        self.lift_ = lift
        self.field_ = self._field(lift)
        self.report_ = self._analyze(lift, self.field_)
        return self

    def predict(self, X):
        """One label per hypersurface in ``X``."""
        batch = _as_batch(X)
        out = np.empty(len(batch), dtype=object)
        for i, item in enumerate(batch):
            lift = _as_lift(item)
            out[i] = self._label(self._analyze(lift, self._field(lift)))
        return out


class DupinCertifier(_Analyzer):
    """Certify the Dupin and proper Dupin properties.

    Labels are ``"proper"``, ``"dupin"`` (Dupin with a varying number of
    curvature spheres) and ``"not-dupin"``.

    Parameters
    ----------
    tol : float, optional
        Drift tolerance; the configured analytic or finite-difference value
        by default.
    max_seeds : int
        Seed samples per family for leaf tracing.
    cluster_tol : float, optional
        Relative gap below which principal values merge.
    """

    def __init__(self, tol=None, max_seeds: int = 192, cluster_tol=None):
        self.tol = tol
        self.max_seeds = max_seeds
        self.cluster_tol = cluster_tol

    def _analyze(self, lift, field_):
        return certify_dupin(lift, field_, tol=self.tol, max_seeds=self.max_seeds)

    @staticmethod
    def _label(report):
        if report.proper:
            return "proper"
        return "dupin" if report.dupin else "not-dupin"


class IsoparametricDetector(_Analyzer):
    """Timelike-line test for Lie equivalence to an isoparametric hypersurface.

    ``predict`` returns booleans.
    """

    def __init__(self, tol: float = 1e-6, cluster_tol=None):
        self.tol = tol
        self.cluster_tol = cluster_tol

    def _analyze(self, lift, field_):
        return isoparametric_criterion(field_, tol=self.tol)

    @staticmethod
    def _label(report):
        return bool(report.accepted)


class ReducibilityDetector(_Analyzer):
    """Codimension-two test per curvature-sphere family.

    ``predict`` returns, per hypersurface, the tuple of family labels.
    """

    def __init__(self, rtol=None, cluster_tol=None):
        self.rtol = rtol
        self.cluster_tol = cluster_tol

    def _analyze(self, lift, field_):
        return reducibility_all(field_, self.rtol)

    @staticmethod
    def _label(reports):
        return tuple(r.label for r in reports)

    @property
    def labels_(self):
        check_is_fitted(self, "report_")
        return self._label(self.report_)
