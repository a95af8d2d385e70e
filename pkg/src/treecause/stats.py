"""Plug-in entropy, training losses and residuals."""

from __future__ import annotations

from collections import Counter

import numpy as np

from .core import EmptyInput, LengthMismatch

RESIDUAL_DIGITS = 12


def empirical_distribution(values) -> Counter:
    values = list(np.asarray(values).ravel().tolist())
    if not values:
        raise EmptyInput("empty sample")
    return Counter(values)


def entropy(values) -> float:
    """Plug-in Shannon entropy in bits of the empirical distribution of ``values``."""
    arr = np.asarray(values).ravel()
    if arr.size == 0:
        raise EmptyInput("entropy of an empty sample is undefined")
    _, counts = np.unique(arr, return_counts=True)
    if len(counts) == 1:
        return 0.0
    p = counts / arr.size
    return float(max(0.0, -(p * np.log2(p)).sum()))


def _paired(a, b):
    a = np.asarray(a).ravel()
    b = np.asarray(b).ravel()
    if len(a) != len(b):
        raise LengthMismatch(f"lengths differ: {len(a)} vs {len(b)}")
    if len(a) == 0:
        raise EmptyInput("empty sample")
    return a, b


def misclassification(y, yhat) -> float:
    y, yhat = _paired(y, yhat)
    return float(np.mean(y != yhat))


def mse(y, yhat) -> float:
    y, yhat = _paired(np.asarray(y, dtype=float), np.asarray(yhat, dtype=float))
    return float(np.mean((y - yhat) ** 2))


def residuals(target, predicted) -> np.ndarray:
    target = np.asarray(target, dtype=float).ravel()
    predicted = np.asarray(predicted, dtype=float).ravel()
    if len(target) != len(predicted):
        raise LengthMismatch(f"lengths differ: {len(target)} vs {len(predicted)}")
    return target - predicted


def residual_categories(res) -> np.ndarray:
    """Round residuals to 12 significant digits so float noise does not split categories."""
    res = np.asarray(res, dtype=float)
    out = np.array([float(f"{v:.{RESIDUAL_DIGITS}g}") for v in res.tolist()])
    # fold -0.0 into 0.0
    return out + 0.0


def residual_entropy(target, predicted) -> float:
    return entropy(residual_categories(residuals(target, predicted)))
