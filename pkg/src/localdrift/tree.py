"""Depth-bounded CART classifier (Gini impurity) for the monitored model."""
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from ._validation import check_positive_int
from .exceptions import ConfigurationError


@dataclass
class TreeNode:
    """Internal node when ``feature`` is set, leaf otherwise.

    Samples with ``x[feature] < threshold`` go left.
    """

    label: int
    counts: tuple
    feature: int = None
    threshold: float = None
    left: "TreeNode" = None
    right: "TreeNode" = None

    @property
    def is_leaf(self):
        return self.feature is None

    def depth(self):
        if self.is_leaf:
            return 0
        return 1 + max(self.left.depth(), self.right.depth())


def gini(counts):
    counts = np.asarray(counts, dtype=float)
    n = counts.sum(axis=-1)
    with np.errstate(invalid="ignore", divide="ignore"):
        p = counts / n[..., None]
    return np.where(n > 0, 1.0 - (p ** 2).sum(axis=-1), 0.0)


def best_split(X, y, min_leaf=1):
    """Lowest weighted-Gini split of ``(X, y)`` with ``y`` in {0, 1}.

    Returns ``(feature, threshold, impurity)`` or ``None`` when no split
    leaves ``min_leaf`` samples on both sides. Ties go to the lowest feature
    index, then the lowest threshold.
    """
    n = len(y)
    best = None
    for j in range(X.shape[1]):
        order = np.argsort(X[:, j], kind="stable")
        xs = X[order, j]
        ones_left = np.cumsum(y[order])[:-1]
        n_left = np.arange(1, n)
        valid = (xs[:-1] < xs[1:]) & (n_left >= min_leaf) & (n - n_left >= min_leaf)
        if not valid.any():
            continue
        n_left = n_left[valid]
        ones_left = ones_left[valid]
        left = np.stack([n_left - ones_left, ones_left], axis=1)
        ones_right = y.sum() - ones_left
        right = np.stack([n - n_left - ones_right, ones_right], axis=1)
        score = (n_left * gini(left) + (n - n_left) * gini(right)) / n
        k = int(np.argmin(score))
        if best is None or score[k] < best[2]:
            pos = np.flatnonzero(valid)[k]
            threshold = (xs[pos] + xs[pos + 1]) / 2
            best = (j, float(threshold), float(score[k]))
    return best


class DecisionTreeClassifier(ClassifierMixin, BaseEstimator):
    """Binary CART tree grown greedily on Gini impurity.

    Parameters
    ----------
    max_depth : int, default=5
        Maximum number of edges on any root-to-leaf path.
    min_leaf : int, default=5
        A split is only considered if both children keep this many samples.

    Attributes
    ----------
    tree_ : TreeNode
        Root of the fitted tree.
    train_accuracy_ : float
        Accuracy of the fitted tree on its training data.
    """

    def __init__(self, max_depth=5, min_leaf=5):
        self.max_depth = max_depth
        self.min_leaf = min_leaf

    def fit(self, X, y):
        X, y = check_X_y(X, y, dtype=np.float64)
        check_positive_int(self.max_depth, "max_depth", minimum=0)
        check_positive_int(self.min_leaf, "min_leaf")
        self.classes_ = np.array([0, 1])
        if not np.isin(y, self.classes_).all():
            raise ConfigurationError("labels must be 0 or 1")
        y = y.astype(np.int64)
        self.n_features_in_ = X.shape[1]
        self.tree_ = self._grow(X, y, 0)
        self._compile()
        self.train_accuracy_ = float(np.mean(self.predict(X) == y))
        return self

    def _grow(self, X, y, depth):
        counts = (int(len(y) - y.sum()), int(y.sum()))
        node = TreeNode(label=int(counts[1] > counts[0]), counts=counts)
        if depth >= self.max_depth or min(counts) == 0 or len(y) < 2 * self.min_leaf:
            return node
        split = best_split(X, y, self.min_leaf)
        if split is None or split[2] >= gini(counts):
            return node
        node.feature, node.threshold = split[0], split[1]
        go_left = X[:, node.feature] < node.threshold
        node.left = self._grow(X[go_left], y[go_left], depth + 1)
        node.right = self._grow(X[~go_left], y[~go_left], depth + 1)
        return node

    def _compile(self):
        # flat arrays so predict can route all rows level by level
        feature, threshold, left, right, label = [], [], [], [], []

        def visit(node):
            i = len(feature)
            feature.append(-1 if node.is_leaf else node.feature)
            threshold.append(np.nan if node.is_leaf else node.threshold)
            left.append(-1)
            right.append(-1)
            label.append(node.label)
            if not node.is_leaf:
                left[i] = visit(node.left)
                right[i] = visit(node.right)
            return i

        visit(self.tree_)
        self._feature = np.array(feature)
        self._threshold = np.array(threshold)
        self._left = np.array(left)
        self._right = np.array(right)
        self._label = np.array(label, dtype=np.int8)

    def apply(self, X):
        """Index of the leaf each row lands in."""
        check_is_fitted(self, "tree_")
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != self.n_features_in_:
            raise ConfigurationError(f"expected {self.n_features_in_} features, got {X.shape[1]}")
        node = np.zeros(len(X), dtype=np.int64)
        rows = np.arange(len(X))
        while True:
            active = self._feature[node] >= 0
            if not active.any():
                return node
            idx = rows[active]
            cur = node[idx]
            go_left = X[idx, self._feature[cur]] < self._threshold[cur]
            node[idx] = np.where(go_left, self._left[cur], self._right[cur])

    def predict(self, X):
        leaves = self.apply(X)
        return self._label[leaves]

    def get_depth(self):
        check_is_fitted(self, "tree_")
        return self.tree_.depth()

    def export_text(self, feature_names=None):
        """Indented text rendering of the fitted tree."""
        check_is_fitted(self, "tree_")
        lines = []

        def visit(node, indent):
            pad = "|   " * indent
            if node.is_leaf:
                lines.append(f"{pad}class: {node.label} {list(node.counts)}")
                return
            name = feature_names[node.feature] if feature_names else f"x[{node.feature}]"
            lines.append(f"{pad}{name} < {node.threshold:g}")
            visit(node.left, indent + 1)
            lines.append(f"{pad}{name} >= {node.threshold:g}")
            visit(node.right, indent + 1)

        visit(self.tree_, 0)
        return "\n".join(lines)
