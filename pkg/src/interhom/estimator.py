"""scikit-learn transformer turning point clouds into interaction Betti curves."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .linalg import parse_ring
from .pointcloud import LabeledPointCloud, ScaleSweep, betti_curve, parse_mode


class InteractionBettiCurve(TransformerMixin, BaseEstimator):
    """Featurise a collection of point clouds by their interaction Betti curves.

    ``X`` is a sequence of ``(n_points, n_features)`` arrays (or a 3-d array).
    ``transform`` returns an integer array of shape
    ``(n_clouds, len(scales), p_max + 1)``.  The ``by_label`` mode needs per
    point label sets passed as ``labels`` to ``transform``.

    Parameters
    ----------
    scales : sequence of float or str
        Strictly increasing Rips scales; strings are read as exact decimals.
    p_max : int
        Highest homological degree reported.
    max_dim : int
        Largest simplex dimension in each Rips complex.
    mode : str
        ``"self:N"`` or ``"by_label"``.
    field : {"q", "gfp"}
    prime : int, optional
        Characteristic when ``field="gfp"``.
    n_jobs : int
        Worker processes used across scales.
    """

    def __init__(self, scales=(0.5, 1.0), p_max=1, max_dim=2, mode="self:2",
                 field="q", prime=None, n_jobs=1):
        self.scales = scales
        self.p_max = p_max
        self.max_dim = max_dim
        self.mode = mode
        self.field = field
        self.prime = prime
        self.n_jobs = n_jobs

    def _clouds(self, X):
        if isinstance(X, np.ndarray) and X.ndim == 2:
            raise ValueError("expected a collection of point clouds, got a single 2-d array")
        return [check_array(c, dtype=np.float64, ensure_min_samples=1) for c in X]

    def fit(self, X, y=None):
        clouds = self._clouds(X)
        dims = {c.shape[1] for c in clouds}
        if len(dims) > 1:
            raise ValueError(f"point clouds have mixed dimensions {sorted(dims)}")
        if not isinstance(self.p_max, int) or self.p_max < 0:
            raise ValueError("p_max must be a non-negative integer")
        self.sweep_ = ScaleSweep(tuple(self.scales), self.p_max, self.mode, self.max_dim)
        self.ring_ = parse_ring(self.field, self.prime)
        if not self.ring_.is_field:
            raise ValueError("field must be q or gfp")
        self.n_features_in_ = dims.pop() if dims else 0
        return self

    def transform(self, X, labels=None):
        check_is_fitted(self, "sweep_")
        clouds = self._clouds(X)
        for c in clouds:
            if c.shape[1] != self.n_features_in_:
                raise ValueError(f"expected {self.n_features_in_} features, got {c.shape[1]}")
        kind, _ = parse_mode(self.mode)
        if kind == "by_label" and labels is None:
            raise ValueError("by_label mode needs per-point labels")
        n_scales = len(self.sweep_.scales)
        out = np.zeros((len(clouds), n_scales, self.p_max + 1), dtype=np.int64)
        for k, c in enumerate(clouds):
            point_labels = labels[k] if labels is not None else [{0}] * len(c)
            cloud = LabeledPointCloud(c.tolist(), point_labels)
            for row in betti_curve(cloud, self.sweep_, self.ring_, n_jobs=self.n_jobs):
                out[k, self.sweep_.scales.index(row.scale), row.degree] = row.betti
        return out
