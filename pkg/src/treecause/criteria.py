"""Tree-complexity criteria for deciding between X -> Y and Y -> X.

Two trees from the same family are grown, one predicting Y from X and one
predicting X from Y. Each criterion compares a per-direction measure of the
two fits; the oriented score's sign picks the direction and an exact zero
abstains.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from . import stats
from .binning import DEFAULT_N_BINS, BinSpec, apply_bins, fit_bins
from .core import (
    CriterionKind,
    DataKind,
    Direction,
    NonFinite,
    PairDataset,
    as_kind,
    validate_dataset,
)
from .tree import Tree, fit_tree

ALL_CRITERIA = tuple(CriterionKind)


@dataclass(frozen=True)
class Variable:
    """One column prepared for modelling.

    ``labels`` are the tree classes (the integers themselves for discrete
    data, bin indices otherwise) and ``numeric`` their values on the real
    line (integers or bin midpoints). ``raw`` is the observed column.
    """

    raw: np.ndarray
    labels: np.ndarray
    numeric: np.ndarray
    spec: BinSpec | None = None

    def to_numeric(self, labels) -> np.ndarray:
        if self.spec is None:
            return np.asarray(labels, dtype=float)
        return self.spec.midpoints()[np.asarray(labels, dtype=np.int64)]


def prepare_variable(values: np.ndarray, kind: DataKind, n_bins: int) -> Variable:
    if kind is DataKind.DISCRETE:
        return Variable(values, values, values)
    spec = fit_bins(values, n_bins)
    binned = apply_bins(values, spec)
    return Variable(values, binned.labels, binned.centers, spec)


@dataclass(frozen=True)
class FittedPair:
    """Both directional fits of one dataset.

    ``tree_xy`` models Y from X and ``tree_yx`` models X from Y, grown with
    identical settings.
    """

    tree_xy: Tree
    tree_yx: Tree
    x: Variable
    y: Variable
    kind: DataKind
    n_bins: int

    def mirrored(self) -> "FittedPair":
        return FittedPair(self.tree_yx, self.tree_xy, self.y, self.x, self.kind, self.n_bins)

    def sides(self, direction: Direction):
        """(tree, input variable, target variable) for a modelling direction."""
        if direction is Direction.X_TO_Y:
            return self.tree_xy, self.x, self.y
        if direction is Direction.Y_TO_X:
            return self.tree_yx, self.y, self.x
        raise ValueError("a modelling direction must be x->y or y->x")


def fit_both(ds: PairDataset, n_bins: int = DEFAULT_N_BINS) -> FittedPair:
    x = prepare_variable(ds.x, ds.kind, n_bins)
    y = prepare_variable(ds.y, ds.kind, n_bins)
    return FittedPair(
        tree_xy=fit_tree(x.labels, y.labels),
        tree_yx=fit_tree(y.labels, x.labels),
        x=x,
        y=y,
        kind=ds.kind,
        n_bins=n_bins,
    )


_DEFAULT_SIGNS = {
    (CriterionKind.TD, DataKind.DISCRETE): -1,
    (CriterionKind.TD, DataKind.CONTINUOUS): -1,
    (CriterionKind.TN, DataKind.DISCRETE): -1,
    (CriterionKind.TN, DataKind.CONTINUOUS): 1,
    (CriterionKind.TL, DataKind.DISCRETE): -1,
    (CriterionKind.TL, DataKind.CONTINUOUS): 1,
    (CriterionKind.PL, DataKind.DISCRETE): -1,
    (CriterionKind.PL, DataKind.CONTINUOUS): -1,
    (CriterionKind.RE, DataKind.DISCRETE): -1,
    (CriterionKind.RE, DataKind.CONTINUOUS): -1,
    (CriterionKind.IH, DataKind.DISCRETE): 1,
    (CriterionKind.IH, DataKind.CONTINUOUS): 1,
}


@dataclass(frozen=True)
class SignConfig:
    """Orientation multiplier for every (criterion, data kind) pair.

    The raw difference ``measure(X->Y) - measure(Y->X)`` is multiplied by the
    sign so that a positive score means X -> Y. Under the defaults the
    causal tree is shallower and, for discrete data, narrower, and fits with
    a smaller normalized entropy decrease but a larger training loss. For
    continuous data the causal tree is the wider one.
    """

    signs: dict = field(default_factory=lambda: dict(_DEFAULT_SIGNS))

    def __post_init__(self):
        signs = {
            (CriterionKind(c), as_kind(k)): int(s) for (c, k), s in dict(self.signs).items()
        }
        missing = set(_DEFAULT_SIGNS) - set(signs)
        if missing:
            raise ValueError(f"sign config is missing {sorted(missing)}")
        if any(s not in (-1, 1) for s in signs.values()):
            raise ValueError("signs must be +1 or -1")
        object.__setattr__(self, "signs", signs)

    def sign(self, kind: CriterionKind, data_kind: DataKind) -> int:
        return self.signs[CriterionKind(kind), as_kind(data_kind)]

    def with_sign(self, kind, data_kind, sign: int) -> "SignConfig":
        signs = dict(self.signs)
        signs[CriterionKind(kind), as_kind(data_kind)] = sign
        return SignConfig(signs)

    def to_dict(self) -> dict:
        return {f"{c.value}/{k.value}": s for (c, k), s in self.signs.items()}

    @classmethod
    def from_dict(cls, d: dict) -> "SignConfig":
        out = {}
        for key, s in d.items():
            c, k = key.split("/")
            out[CriterionKind(c), DataKind(k)] = s
        return cls(out)


DEFAULT_SIGNS = SignConfig()


@dataclass(frozen=True)
class CriterionScore:
    kind: CriterionKind
    j_raw: float
    j_oriented: float
    measure_xy: float
    measure_yx: float
    decision: Direction


def decide(j: float) -> Direction:
    if not math.isfinite(j):
        raise NonFinite(f"criterion value {j!r} is not finite")
    if j > 0:
        return Direction.X_TO_Y
    if j < 0:
        return Direction.Y_TO_X
    return Direction.ABSTAIN


def _residual_entropy(fp: FittedPair, tree: Tree, source: Variable, target: Variable) -> float:
    predicted = target.to_numeric(tree.predict(source.labels))
    if fp.kind is DataKind.DISCRETE:
        return stats.entropy(stats.residuals(target.numeric, predicted))
    # residuals of a continuous target are themselves continuous: bin them
    # on their own range like any other continuous variable
    res = stats.residuals(target.raw, predicted)
    return stats.entropy(apply_bins(res, fit_bins(res, fp.n_bins)).labels)


def direction_measure(fp: FittedPair, kind: CriterionKind, direction: Direction) -> float:
    """Complexity of the model fitted in ``direction``.

    TD, TN and TL are depth, node and leaf counts; PL averages path lengths
    over the training inputs. RE is the entropy decrease over the target,
    ``1 - H(residual) / H(target)`` (0 for a constant target). IH is the
    training misclassification rate for discrete data and the MSE between
    bin midpoints for continuous data.
    """
    tree, source, target = fp.sides(direction)
    kind = CriterionKind(kind)
    if kind is CriterionKind.TD:
        return float(tree.depth)
    if kind is CriterionKind.TN:
        return float(tree.n_nodes)
    if kind is CriterionKind.TL:
        return float(tree.n_leaves)
    if kind is CriterionKind.PL:
        return float(tree.path_lengths(source.labels).mean())
    if kind is CriterionKind.RE:
        h_target = stats.entropy(target.labels)
        if h_target == 0.0:
            return 0.0
        return 1.0 - _residual_entropy(fp, tree, source, target) / h_target
    pred = tree.predict(source.labels)
    if fp.kind is DataKind.DISCRETE:
        return stats.misclassification(target.labels, pred)
    return stats.mse(target.numeric, target.to_numeric(pred))


def score_criterion(
    fp: FittedPair,
    kind: CriterionKind,
    signs: SignConfig = DEFAULT_SIGNS,
    data_kind: DataKind | None = None,
) -> CriterionScore:
    kind = CriterionKind(kind)
    data_kind = fp.kind if data_kind is None else as_kind(data_kind)
    m_xy = direction_measure(fp, kind, Direction.X_TO_Y)
    m_yx = direction_measure(fp, kind, Direction.Y_TO_X)
    return orient(kind, m_xy, m_yx, data_kind, signs)


def orient(kind, measure_xy: float, measure_yx: float, data_kind, signs=DEFAULT_SIGNS) -> CriterionScore:
    """Turn two per-direction measures into an oriented score and decision."""
    kind = CriterionKind(kind)
    j_raw = measure_xy - measure_yx
    j = signs.sign(kind, data_kind) * j_raw
    return CriterionScore(kind, j_raw, j, measure_xy, measure_yx, decide(j))


def evaluate_all(
    ds: PairDataset,
    n_bins: int = DEFAULT_N_BINS,
    signs: SignConfig = DEFAULT_SIGNS,
    criteria=ALL_CRITERIA,
) -> list[CriterionScore]:
    fp = fit_both(ds, n_bins)
    return [score_criterion(fp, c, signs) for c in criteria]


class TreeComplexityDirection(BaseEstimator):
    """Infer the causal direction of a variable pair from tree complexity.

    Parameters
    ----------
    kind : {'discrete', 'continuous'} or None
        Data kind of both columns. ``None`` picks discrete when every value
        is an integer.
    n_bins : int
        Equal-width bins used to discretize continuous columns.
    criterion : str
        Criterion whose decision becomes ``direction_``.
    signs : SignConfig or None
        Orientation multipliers; ``None`` uses the defaults.

    Attributes
    ----------
    scores_ : dict mapping CriterionKind to CriterionScore
    direction_ : Direction
    """

    def __init__(self, kind=None, n_bins=DEFAULT_N_BINS, criterion="IH", signs=None):
        self.kind = kind
        self.n_bins = n_bins
        self.criterion = criterion
        self.signs = signs

    def fit(self, X, y=None):
        """Fit on a two-column ``X``, or on ``X`` as the first and ``y`` as the second variable."""
        X = np.asarray(X, dtype=float)
        if y is None:
            if X.ndim != 2 or X.shape[1] != 2:
                raise ValueError("X must have exactly two columns when y is omitted")
            a, b = X[:, 0], X[:, 1]
        else:
            a, b = X.reshape(len(X), -1), np.asarray(y, dtype=float)
            if a.shape[1] != 1:
                raise ValueError("X must be a single column when y is given")
            a = a[:, 0]
        kind = self.kind
        if kind is None:
            integral = all(np.array_equal(c, np.round(c)) for c in (a, b) if np.isfinite(c).all())
            kind = DataKind.DISCRETE if integral else DataKind.CONTINUOUS
        ds = validate_dataset(a, b, kind)
        signs = DEFAULT_SIGNS if self.signs is None else self.signs
        self.kind_ = ds.kind
        self.fitted_pair_ = fit_both(ds, self.n_bins)
        self.scores_ = {
            c: score_criterion(self.fitted_pair_, c, signs) for c in ALL_CRITERIA
        }
        self.direction_ = self.scores_[CriterionKind(self.criterion)].decision
        return self

    def decision_function(self) -> dict:
        """Oriented score per criterion; positive favours X -> Y."""
        check_is_fitted(self, "scores_")
        return {c: s.j_oriented for c, s in self.scores_.items()}
