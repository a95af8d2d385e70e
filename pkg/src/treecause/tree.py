"""Unbounded-depth CART classification tree over one numeric feature.

With a single input feature every node owns a contiguous run of the sorted
distinct x values, so growth works on an (x value, class) contingency table
and each split search is one cumulative sum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted

from .core import EmptyInput

LEAF = -1


@dataclass(frozen=True, eq=False)
class Tree:
    """Fitted binary tree stored as flat node arrays (preorder, left first).

    ``left[i] == right[i] == LEAF`` marks node ``i`` as a leaf; ``value[i]``
    is its majority label and ``threshold[i]`` is NaN. Internal nodes route
    ``x <= threshold`` to the left child.
    """

    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    value: np.ndarray
    node_depth: np.ndarray

    @property
    def is_leaf(self) -> np.ndarray:
        return self.left == LEAF

    @property
    def n_nodes(self) -> int:
        return len(self.left)

    @property
    def n_leaves(self) -> int:
        return int(self.is_leaf.sum())

    @property
    def depth(self) -> int:
        return int(self.node_depth.max())

    def _intervals(self):
        # Leaves in left-to-right order partition the real line at the sorted
        # internal thresholds; leaf j covers (t[j-1], t[j]].
        if not hasattr(self, "_cache"):
            order = _inorder_leaves(self.left, self.right)
            cuts = np.sort(self.threshold[~self.is_leaf])
            object.__setattr__(
                self, "_cache", (cuts, self.value[order], self.node_depth[order])
            )
        return self._cache

    def leaf_index(self, x) -> np.ndarray:
        cuts, _, _ = self._intervals()
        return np.searchsorted(cuts, np.asarray(x, dtype=float), side="left")

    def predict(self, x) -> np.ndarray:
        _, values, _ = self._intervals()
        return values[self.leaf_index(x)]

    def path_lengths(self, x) -> np.ndarray:
        """Number of internal nodes visited by each sample on its way to a leaf."""
        _, _, depths = self._intervals()
        return depths[self.leaf_index(x)]

    def __eq__(self, other):
        if not isinstance(other, Tree):
            return NotImplemented
        return all(
            np.array_equal(a, b, equal_nan=(a.dtype.kind == "f"))
            for a, b in zip(self._arrays(), other._arrays())
        )

    __hash__ = None

    def _arrays(self):
        return (self.threshold, self.left, self.right, self.value, self.node_depth)


def _inorder_leaves(left, right) -> np.ndarray:
    out, stack, node = [], [], 0
    while stack or node != LEAF:
        while node != LEAF:
            stack.append(node)
            node = left[node]
        node = stack.pop()
        if left[node] == LEAF:
            out.append(node)
        node = right[node]
    return np.asarray(out, dtype=np.int64)


def _best_split(counts: np.ndarray):
    """Best split of a block of contingency rows, or None if no split helps.

    Returns the row index after which to cut. Maximizing
    ``sum(L^2)/nL + sum(R^2)/nR`` is maximizing the Gini decrease.
    """
    total = counts.sum(axis=0)
    n = int(total.sum())
    cum = np.cumsum(counts[:-1], axis=0)
    rest = total - cum
    n_left = cum.sum(axis=1)
    n_right = n - n_left
    sq_left = np.einsum("ij,ij->i", cum, cum)
    sq_right = np.einsum("ij,ij->i", rest, rest)
    score = sq_left / n_left + sq_right / n_right
    best = float(score.max())
    near = np.flatnonzero(score >= best - 1e-9 * max(best, 1.0))

    def exact(i):
        return (int(sq_left[i]) * int(n_right[i]) + int(sq_right[i]) * int(n_left[i]),
                int(n_left[i]) * int(n_right[i]))

    # exact rational comparison; ties go to the smallest threshold
    i_best = int(near[0])
    num, den = exact(i_best)
    for i in near[1:]:
        n2, d2 = exact(int(i))
        if n2 * den > num * d2:
            i_best, num, den = int(i), n2, d2
    sq_parent = int(np.dot(total, total))
    if num * n <= sq_parent * den:
        return None
    return i_best


def fit_tree(x, y) -> Tree:
    """Grow a Gini CART tree until leaves are pure, x-constant or gainless.

    Labels ``y`` may be any sortable values; leaf predictions are majority
    labels with ties going to the smallest label.
    """
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y).ravel()
    if len(x) == 0:
        raise EmptyInput("cannot fit a tree on zero samples")
    if len(x) != len(y):
        raise ValueError(f"x has {len(x)} values but y has {len(y)}")
    ux, xi = np.unique(x, return_inverse=True)
    uy, yi = np.unique(y, return_inverse=True)
    k = len(uy)
    table = np.bincount(xi * k + yi, minlength=len(ux) * k).reshape(len(ux), k)

    threshold, left, right, value, node_depth = [], [], [], [], []
    # (first row, end row, depth, parent, is_right_child)
    stack = [(0, len(ux), 0, -1, False)]
    while stack:
        a, b, d, parent, is_right = stack.pop()
        node = len(left)
        if parent >= 0:
            (right if is_right else left)[parent] = node
        block = table[a:b]
        total = block.sum(axis=0)
        value.append(uy[int(np.argmax(total))])
        node_depth.append(d)
        cut = None
        if b - a > 1 and total.max() < total.sum():
            cut = _best_split(block)
        left.append(LEAF)
        right.append(LEAF)
        if cut is None:
            threshold.append(np.nan)
            continue
        m = a + cut + 1
        threshold.append((ux[m - 1] + ux[m]) / 2.0)
        stack.append((m, b, d + 1, node, True))
        stack.append((a, m, d + 1, node, False))

    return Tree(
        threshold=np.asarray(threshold, dtype=float),
        left=np.asarray(left, dtype=np.int64),
        right=np.asarray(right, dtype=np.int64),
        value=np.asarray(value),
        node_depth=np.asarray(node_depth, dtype=np.int64),
    )


def predict(tree: Tree, x):
    """Predicted label for a scalar or array of inputs."""
    out = tree.predict(np.atleast_1d(x))
    return out[0] if np.ndim(x) == 0 else out


def depth(tree: Tree) -> int:
    return tree.depth


def count_nodes(tree: Tree) -> int:
    return tree.n_nodes


def count_leaves(tree: Tree) -> int:
    return tree.n_leaves


def mean_path_length(tree: Tree, xs) -> float:
    xs = np.asarray(xs, dtype=float).ravel()
    if xs.size == 0:
        raise EmptyInput("need at least one sample to average path lengths")
    return float(tree.path_lengths(xs).mean())


class UnboundedTreeClassifier(ClassifierMixin, BaseEstimator):
    """Single-feature Gini tree with no depth limit, scikit-learn style.

    Unlike :class:`sklearn.tree.DecisionTreeClassifier` the growth is fully
    deterministic (ties go to the smallest threshold) and splits must have a
    strictly positive impurity decrease.
    """

    def fit(self, X, y):
        x = _single_column(X)
        self.tree_ = fit_tree(x, y)
        self.classes_ = np.unique(np.asarray(y))
        self.n_features_in_ = 1
        return self

    def predict(self, X):
        check_is_fitted(self, "tree_")
        return self.tree_.predict(_single_column(X))

    def get_depth(self) -> int:
        check_is_fitted(self, "tree_")
        return self.tree_.depth

    def get_n_leaves(self) -> int:
        check_is_fitted(self, "tree_")
        return self.tree_.n_leaves

    @property
    def node_count(self) -> int:
        check_is_fitted(self, "tree_")
        return self.tree_.n_nodes

    def mean_path_length(self, X) -> float:
        check_is_fitted(self, "tree_")
        return mean_path_length(self.tree_, _single_column(X))


def _single_column(X) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim == 2:
        if X.shape[1] != 1:
            raise ValueError(f"expected a single feature, got {X.shape[1]}")
        X = X[:, 0]
    if X.ndim != 1:
        raise ValueError("expected a 1-D array or a single-column 2-D array")
    return X
