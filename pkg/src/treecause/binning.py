"""Equal-width discretization of continuous columns."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .core import EmptyInput

DEFAULT_N_BINS = 100


class LabelOutOfRange(IndexError):
    pass


@dataclass(frozen=True)
class BinSpec:
    lo: float
    hi: float
    n_bins: int

    def __post_init__(self):
        if self.n_bins < 1:
            raise ValueError("n_bins must be >= 1")
        if not self.hi >= self.lo:
            raise ValueError("hi must be >= lo")

    @property
    def width(self) -> float:
        return (self.hi - self.lo) / self.n_bins

    @property
    def degenerate(self) -> bool:
        return self.width == 0.0

    def midpoints(self) -> np.ndarray:
        if self.degenerate:
            return np.full(self.n_bins, self.lo)
        return self.lo + (np.arange(self.n_bins) + 0.5) * self.width


@dataclass(frozen=True)
class BinnedVariable:
    labels: np.ndarray
    spec: BinSpec

    @property
    def centers(self) -> np.ndarray:
        """Bin midpoints of every label, i.e. the numeric representation."""
        return self.spec.midpoints()[self.labels]


def fit_bins(values, n_bins: int = DEFAULT_N_BINS) -> BinSpec:
    values = np.asarray(values, dtype=float).ravel()
    if values.size == 0:
        raise EmptyInput("cannot fit bins on an empty sample")
    return BinSpec(float(values.min()), float(values.max()), int(n_bins))


def apply_bins(values, spec: BinSpec) -> BinnedVariable:
    """Map values to bin indices; out-of-range values clamp to the end bins.

    The last bin is closed on the right so that ``spec.hi`` lands in it.
    """
    values = np.asarray(values, dtype=float).ravel()
    if spec.degenerate:
        labels = np.zeros(values.shape, dtype=np.int64)
    else:
        raw = np.floor((values - spec.lo) / spec.width)
        labels = np.clip(raw, 0, spec.n_bins - 1).astype(np.int64)
    return BinnedVariable(labels, spec)


def midpoint(spec: BinSpec, label: int) -> float:
    if not 0 <= label < spec.n_bins:
        raise LabelOutOfRange(f"label {label} outside [0, {spec.n_bins})")
    if spec.degenerate:
        return spec.lo
    return spec.lo + (label + 0.5) * spec.width


class EqualWidthBinner(TransformerMixin, BaseEstimator):
    """Column-wise equal-width binning with the scikit-learn transformer API.

    ``transform`` returns integer bin labels; ``inverse_transform`` maps
    labels back to bin midpoints.
    """

    def __init__(self, n_bins=DEFAULT_N_BINS):
        self.n_bins = n_bins

    def fit(self, X, y=None):
        X = _as_2d(X)
        if X.shape[0] == 0:
            raise EmptyInput("cannot fit bins on an empty sample")
        self.specs_ = [fit_bins(X[:, j], self.n_bins) for j in range(X.shape[1])]
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "specs_")
        X = _as_2d(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"expected {self.n_features_in_} columns, got {X.shape[1]}"
            )
        return np.column_stack(
            [apply_bins(X[:, j], s).labels for j, s in enumerate(self.specs_)]
        )

    def inverse_transform(self, X):
        check_is_fitted(self, "specs_")
        X = np.asarray(X, dtype=np.int64).reshape(len(X), -1)
        return np.column_stack(
            [s.midpoints()[X[:, j]] for j, s in enumerate(self.specs_)]
        )


def _as_2d(X) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    if X.ndim != 2:
        raise ValueError("expected a 1-D or 2-D array")
    if not np.isfinite(X).all():
        raise ValueError("input contains NaN or infinite values")
    return X
