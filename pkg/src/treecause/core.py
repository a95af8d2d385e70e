"""Shared domain types and input validation."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


class DataKind(str, enum.Enum):
    DISCRETE = "discrete"
    CONTINUOUS = "continuous"


class Direction(str, enum.Enum):
    X_TO_Y = "x->y"
    Y_TO_X = "y->x"
    ABSTAIN = "abstain"

    def flipped(self) -> "Direction":
        if self is Direction.X_TO_Y:
            return Direction.Y_TO_X
        if self is Direction.Y_TO_X:
            return Direction.X_TO_Y
        return self


class CriterionKind(str, enum.Enum):
    """The six complexity criteria, keyed by their short names."""

    TD = "TD"  # tree depth
    TN = "TN"  # node count
    TL = "TL"  # leaf count
    PL = "PL"  # mean path length
    RE = "RE"  # residual entropy
    IH = "IH"  # interpolation hardness


class ValidationError(ValueError):
    """Base class for rejected input data."""


class LengthMismatch(ValidationError):
    pass


class NonFinite(ValidationError):
    pass


class NonInteger(ValidationError):
    pass


class TooSmall(ValidationError):
    pass


class EmptyInput(ValueError):
    pass


def as_kind(kind) -> DataKind:
    if isinstance(kind, DataKind):
        return kind
    try:
        return DataKind(str(kind).lower())
    except ValueError:
        raise ValueError(f"unknown data kind: {kind!r}") from None


@dataclass(frozen=True, eq=False)
class PairDataset:
    """Two equally long columns of observations sharing one data kind.

    Build instances through :func:`validate_dataset`; the arrays are made
    read-only so a dataset can be shared between workers.
    """

    x: np.ndarray
    y: np.ndarray
    kind: DataKind

    @property
    def n(self) -> int:
        return len(self.x)

    def swapped(self) -> "PairDataset":
        return PairDataset(self.y, self.x, self.kind)

    def __eq__(self, other):
        if not isinstance(other, PairDataset):
            return NotImplemented
        return (
            self.kind == other.kind
            and np.array_equal(self.x, other.x)
            and np.array_equal(self.y, other.y)
        )

    __hash__ = None


def _column(values, name: str) -> np.ndarray:
    try:
        arr = np.array(values, dtype=float, copy=True).ravel()
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{name} is not numeric: {exc}") from None
    return arr


def validate_dataset(x, y, kind=DataKind.CONTINUOUS) -> PairDataset:
    """Check raw columns and wrap them in an immutable :class:`PairDataset`.

    Raises
    ------
    LengthMismatch, NonFinite, NonInteger, TooSmall
    """
    kind = as_kind(kind)
    xa = _column(x, "x")
    ya = _column(y, "y")
    if len(xa) != len(ya):
        raise LengthMismatch(f"x has {len(xa)} values but y has {len(ya)}")
    if len(xa) < 2:
        raise TooSmall(f"need at least 2 pairs, got {len(xa)}")
    if not (np.isfinite(xa).all() and np.isfinite(ya).all()):
        raise NonFinite("NaN or infinite values are not allowed")
    if kind is DataKind.DISCRETE:
        for name, arr in (("x", xa), ("y", ya)):
            if not np.array_equal(arr, np.round(arr)):
                raise NonInteger(f"discrete column {name} has fractional values")
    xa.flags.writeable = False
    ya.flags.writeable = False
    return PairDataset(xa, ya, kind)
