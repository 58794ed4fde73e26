"""Binary decision trees grown by greedy impurity reduction.

Regression trees split on variance (sum of squared errors), classification
trees on Gini impurity.  Split search is exhaustive over midpoints between
consecutive distinct values; ties go to the lowest feature index, then the
lowest threshold, which keeps training deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class Node:
    feature: int = -1
    threshold: float = 0.0
    left: "Node | None" = None
    right: "Node | None" = None
    value: float = 0.0
    leaf_id: int = -1

    @property
    def is_leaf(self) -> bool:
        return self.feature < 0

    def to_dict(self) -> dict:
        if self.is_leaf:
            return {"value": self.value}
        return {"feature": self.feature, "threshold": self.threshold,
                "left": self.left.to_dict(), "right": self.right.to_dict()}

    @staticmethod
    def from_dict(d: dict) -> "Node":
        if "feature" not in d:
            return Node(value=d["value"])
        return Node(feature=d["feature"], threshold=d["threshold"],
                    left=Node.from_dict(d["left"]), right=Node.from_dict(d["right"]))


def _renumber_leaves(root: Node) -> int:
    count = 0
    stack = [root]
    while stack:
        node = stack.pop()
        if node.is_leaf:
            node.leaf_id = count
            count += 1
        else:
            stack.append(node.right)
            stack.append(node.left)
    return count


class DecisionTree:
    """A fitted tree; ``n_leaves`` and ``apply`` support boosting updates."""

    def __init__(self, root: Node):
        self.root = root
        self.n_leaves = _renumber_leaves(root)

    def predict(self, x: np.ndarray) -> np.ndarray:
        out = np.empty(x.shape[0])
        for i in range(x.shape[0]):
            node = self.root
            while not node.is_leaf:
                node = node.left if x[i, node.feature] <= node.threshold else node.right
            out[i] = node.value
        return out

    def apply(self, x: np.ndarray) -> np.ndarray:
        """Leaf id reached by each row."""
        out = np.empty(x.shape[0], dtype=int)
        for i in range(x.shape[0]):
            node = self.root
            while not node.is_leaf:
                node = node.left if x[i, node.feature] <= node.threshold else node.right
            out[i] = node.leaf_id
        return out

    def leaf_nodes(self) -> list[Node]:
        leaves: list[Node] = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.is_leaf:
                leaves.append(node)
            else:
                stack.append(node.right)
                stack.append(node.left)
        leaves.sort(key=lambda nd: nd.leaf_id)
        return leaves

    def to_dict(self) -> dict:
        return self.root.to_dict()

    @staticmethod
    def from_dict(d: dict) -> "DecisionTree":
        return DecisionTree(Node.from_dict(d))


def _split_positions(xs: np.ndarray, min_leaf: int) -> np.ndarray | None:
    n = xs.size
    if n < 2 * min_leaf:
        return None
    pos = np.arange(min_leaf - 1, n - min_leaf)
    if pos.size == 0:
        return None
    return pos


def _candidate_features(n_features: int, max_features: int | None, rng) -> np.ndarray:
    if max_features is None or max_features >= n_features:
        return np.arange(n_features)
    # Sorted so the lowest-index rule stays meaningful under subsampling.
    return np.sort(rng.permutation(n_features)[:max_features])


def _best_split_sse(x, y, feat_indices, min_leaf):
    """(gain, feature, threshold) maximizing SSE reduction, or None."""
    n = y.size
    total = float(y.sum())
    total_sq = float((y * y).sum())
    sse_parent = total_sq - total * total / n
    eps = 1e-12 * max(1.0, abs(sse_parent))
    best = None
    for f in feat_indices:
        order = np.argsort(x[:, f], kind="stable")
        xs = x[order, f]
        pos = _split_positions(xs, min_leaf)
        if pos is None:
            continue
        ys = y[order]
        csum = np.cumsum(ys)
        csq = np.cumsum(ys * ys)
        nl = pos + 1.0
        nr = n - nl
        sl = csum[pos]
        sse_l = csq[pos] - sl * sl / nl
        sr = total - sl
        sse_r = (total_sq - csq[pos]) - sr * sr / nr
        gain = sse_parent - (sse_l + sse_r)
        gain[xs[pos] >= xs[pos + 1]] = -np.inf
        j = int(np.argmax(gain))
        if gain[j] > eps and (best is None or gain[j] > best[0] + eps):
            best = (float(gain[j]), int(f), float(0.5 * (xs[pos[j]] + xs[pos[j] + 1])))
    return best


def _best_split_gini(x, y_onehot, feat_indices, min_leaf):
    """(gain, feature, threshold) maximizing Gini reduction, or None."""
    n = y_onehot.shape[0]
    counts = y_onehot.sum(axis=0)
    parent_term = float((counts * counts).sum()) / n
    eps = 1e-12 * max(1.0, n - parent_term)
    best = None
    for f in feat_indices:
        order = np.argsort(x[:, f], kind="stable")
        xs = x[order, f]
        pos = _split_positions(xs, min_leaf)
        if pos is None:
            continue
        cum = np.cumsum(y_onehot[order], axis=0)
        nl = (pos + 1).astype(float)
        nr = n - nl
        cl = cum[pos]
        cr = counts - cl
        gain = (cl * cl).sum(axis=1) / nl + (cr * cr).sum(axis=1) / nr - parent_term
        gain[xs[pos] >= xs[pos + 1]] = -np.inf
        j = int(np.argmax(gain))
        if gain[j] > eps and (best is None or gain[j] > best[0] + eps):
            best = (float(gain[j]), int(f), float(0.5 * (xs[pos[j]] + xs[pos[j] + 1])))
    return best


def grow_regression_tree(x: np.ndarray, y: np.ndarray, max_depth: int = 0,
                         min_samples_leaf: int = 1, max_features: int | None = None,
                         rng: np.random.Generator | None = None) -> DecisionTree:
    """max_depth of 0 means unlimited."""

    def build(rows, depth):
        yr = y[rows]
        node = Node(value=float(yr.mean()))
        if (max_depth and depth >= max_depth) or rows.size < 2 * min_samples_leaf:
            return node
        feats = _candidate_features(x.shape[1], max_features, rng)
        found = _best_split_sse(x[rows], yr, feats, min_samples_leaf)
        if found is None:
            return node
        _, f, thr = found
        mask = x[rows, f] <= thr
        node.feature, node.threshold = f, thr
        node.left = build(rows[mask], depth + 1)
        node.right = build(rows[~mask], depth + 1)
        return node

    return DecisionTree(build(np.arange(x.shape[0]), 0))


def grow_classification_tree(x: np.ndarray, y_idx: np.ndarray, n_classes: int,
                             max_depth: int = 0, min_samples_leaf: int = 1,
                             max_features: int | None = None,
                             rng: np.random.Generator | None = None) -> DecisionTree:
    """Gini tree over class indices; leaves store the majority class index
    (ties to the lowest index)."""
    onehot = np.zeros((x.shape[0], n_classes))
    onehot[np.arange(x.shape[0]), y_idx] = 1.0

    def build(rows, depth):
        counts = onehot[rows].sum(axis=0)
        node = Node(value=float(np.argmax(counts)))
        if (max_depth and depth >= max_depth) or rows.size < 2 * min_samples_leaf \
                or np.count_nonzero(counts) == 1:
            return node
        feats = _candidate_features(x.shape[1], max_features, rng)
        found = _best_split_gini(x[rows], onehot[rows], feats, min_samples_leaf)
        if found is None:
            return node
        _, f, thr = found
        mask = x[rows, f] <= thr
        node.feature, node.threshold = f, thr
        node.left = build(rows[mask], depth + 1)
        node.right = build(rows[~mask], depth + 1)
        return node

    return DecisionTree(build(np.arange(x.shape[0]), 0))
