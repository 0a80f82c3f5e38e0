"""Gap-tolerant word distance, complete-linkage clustering, pruned tree views.

The distance between two words is 1 - (1/omega) * sum of per-position
scores: +1 for a matching letter pair, -1 for a mismatching pair, 0 when
either side is a gap (positions past a word's end count as gaps). Scores
are summed as integers, so equal inputs give bit-identical distances.

The full merge tree is computed eagerly; pruning and expansion are pure
view-layer operations over it, which makes expanding a node O(1).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property

import numpy as np

from .dataset import Dataset
from .errors import NotFoundError, SizeError
from .sax import GAP, SaxWord

_CHUNK_ROWS = 256


def _padded_codes(words: list[SaxWord], omega: int) -> np.ndarray:
    longest = max((len(w) for w in words), default=0)
    if omega < longest:
        raise ValueError(f"omega={omega} is shorter than the longest word ({longest})")
    codes = np.full((len(words), omega), GAP, dtype=np.int16)
    for i, w in enumerate(words):
        codes[i, : len(w)] = w.codes
    return codes


def word_distance(a: SaxWord, b: SaxWord, omega: int) -> float:
    """Distance in [0, 2] between two words, gaps scoring zero."""
    ca, cb = _padded_codes([a, b], omega)
    present = (ca != GAP) & (cb != GAP)
    total = int(np.sum(present & (ca == cb))) - int(np.sum(present & (ca != cb)))
    return (omega - total) / omega


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Symmetric pairwise word distances with a zero diagonal."""

    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("distance matrix must be square")
        if m.shape[0] < 2:
            raise SizeError("distance matrix needs at least 2 points")
        if np.any(np.diag(m) != 0.0):
            raise ValueError("distance matrix diagonal must be zero")
        if not np.array_equal(m, m.T):
            raise ValueError("distance matrix must be symmetric")
        if m.min() < 0.0 or m.max() > 2.0:
            raise ValueError("distances must lie in [0, 2]")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


def distance_matrix(words: list[SaxWord], omega: int) -> DistanceMatrix:
    """All pairwise word distances; the diagonal is forced to zero even for
    gapped words (a word's off-diagonal self-distance would be gaps/omega)."""
    n = len(words)
    if n < 2:
        raise SizeError(f"need at least 2 words, got {n}")
    codes = _padded_codes(words, omega)
    present = codes != GAP

    out = np.empty((n, n), dtype=np.float64)
    for lo in range(0, n, _CHUNK_ROWS):
        hi = min(lo + _CHUNK_ROWS, n)
        both = present[lo:hi, None, :] & present[None, :, :]
        eq = (codes[lo:hi, None, :] == codes[None, :, :]) & both
        total = eq.sum(axis=2, dtype=np.int64) - (both & ~eq).sum(axis=2, dtype=np.int64)
        out[lo:hi] = (omega - total) / omega
    np.fill_diagonal(out, 0.0)
    return DistanceMatrix(out)


@dataclass(frozen=True)
class Merge:
    """One agglomeration step: left/right node indices, linkage height,
    and the index assigned to the merged node."""

    left: int
    right: int
    height: float
    node: int


@dataclass(frozen=True, eq=False)
class Dendrogram:
    """Full binary merge tree over n leaves.

    Nodes are indexed 0..2n-2: leaves 0..n-1 in input order, merged nodes
    n..2n-2 in creation order (the root is 2n-2). String node ids, used by
    every outward-facing surface, are the series id for leaves and a
    generated id for internal nodes.
    """

    leaves: tuple[str, ...]
    merges: tuple[Merge, ...]

    def __post_init__(self):
        if len(self.merges) != len(self.leaves) - 1:
            raise ValueError("a dendrogram over n leaves needs exactly n-1 merges")

    @property
    def n_leaves(self) -> int:
        return len(self.leaves)

    @property
    def n_nodes(self) -> int:
        return 2 * len(self.leaves) - 1

    @property
    def root(self) -> int:
        return self.n_nodes - 1

    @cached_property
    def _children(self) -> dict[int, tuple[int, int]]:
        return {m.node: (m.left, m.right) for m in self.merges}

    @cached_property
    def _parent(self) -> np.ndarray:
        parent = np.full(self.n_nodes, -1, dtype=np.int64)
        for m in self.merges:
            parent[m.left] = m.node
            parent[m.right] = m.node
        return parent

    @cached_property
    def _size(self) -> np.ndarray:
        size = np.ones(self.n_nodes, dtype=np.int64)
        for m in self.merges:
            size[m.node] = size[m.left] + size[m.right]
        return size

    @cached_property
    def _height(self) -> np.ndarray:
        h = np.zeros(self.n_nodes, dtype=np.float64)
        for m in self.merges:
            h[m.node] = m.height
        return h

    # internal ids are "c<index>"; if that ever collides with a series id,
    # the prefix deterministically grows until the namespace is clean
    @cached_property
    def _internal_prefix(self) -> str:
        taken = set(self.leaves)
        prefix = "c"
        while any(f"{prefix}{i}" in taken for i in range(self.n_leaves, self.n_nodes)):
            prefix += "c"
        return prefix

    @cached_property
    def _index_by_id(self) -> dict[str, int]:
        ids = {sid: i for i, sid in enumerate(self.leaves)}
        for i in range(self.n_leaves, self.n_nodes):
            ids[f"{self._internal_prefix}{i}"] = i
        return ids

    def node_id(self, index: int) -> str:
        if index < self.n_leaves:
            return self.leaves[index]
        return f"{self._internal_prefix}{index}"

    def node_index(self, node_id: str) -> int:
        try:
            return self._index_by_id[node_id]
        except KeyError:
            raise NotFoundError(f"unknown node id {node_id!r}") from None

    def is_leaf(self, index: int) -> bool:
        return index < self.n_leaves

    def size(self, index: int) -> int:
        return int(self._size[index])

    def height(self, index: int) -> float:
        return float(self._height[index])

    def children(self, index: int) -> tuple[int, ...]:
        return self._children.get(index, ())

    def parent(self, index: int) -> int:
        """Parent node index, or -1 for the root."""
        return int(self._parent[index])

    def leaf_indices_under(self, index: int) -> list[int]:
        stack, out = [index], []
        while stack:
            i = stack.pop()
            if self.is_leaf(i):
                out.append(i)
            else:
                left, right = self._children[i]
                stack.append(right)
                stack.append(left)
        return out[::-1]

    def member_ids(self, index: int) -> list[str]:
        """Series ids of all leaves under a node, in leaf traversal order."""
        return [self.leaves[i] for i in sorted(self.leaf_indices_under(index))]

    def cut(self, k: int) -> dict[str, int]:
        """Flat clustering: stop after n-k merges and label each leaf by its
        component, numbered 0..k-1 in leaf order of first appearance."""
        if not 1 <= k <= self.n_leaves:
            raise ValueError(f"k must be in [1, {self.n_leaves}], got {k}")
        parent = np.full(self.n_nodes, -1, dtype=np.int64)
        for m in self.merges[: self.n_leaves - k]:
            parent[m.left] = m.node
            parent[m.right] = m.node
        labels: dict[str, int] = {}
        roots: dict[int, int] = {}
        for i, sid in enumerate(self.leaves):
            j = i
            while parent[j] != -1:
                j = int(parent[j])
            labels[sid] = roots.setdefault(j, len(roots))
        return labels


def _best_partner(row: np.ndarray, nodes: np.ndarray, my_node: int) -> tuple[float, int]:
    """Smallest entry of an active row, ties resolved toward the partner
    producing the lexicographically least (left, right) node pair."""
    m = row.min()
    if not np.isfinite(m):
        return np.inf, -1
    ties = np.flatnonzero(row == m)
    if ties.size == 1:
        return float(m), int(ties[0])
    partners = nodes[ties]
    lo = np.minimum(partners, my_node)
    hi = np.maximum(partners, my_node)
    return float(m), int(ties[np.lexsort((hi, lo))[0]])


def agglomerate(matrix: DistanceMatrix) -> Dendrogram:
    """Agglomerative clustering with complete linkage.

    Each step merges the active pair at minimal inter-cluster distance,
    where the inter-cluster distance is the maximum pairwise member
    distance; equal candidates are broken by the smallest (left, right)
    node-index pair. Merge heights are non-decreasing.

    Leaves keep positional ids here; attach series ids via
    `dendrogram_for_words` or `relabel`.
    """
    n = matrix.n
    D = matrix.entries.copy()
    np.fill_diagonal(D, np.inf)

    nodes = np.arange(n, dtype=np.int64)  # slot -> node index
    best_val = np.empty(n, dtype=np.float64)
    best_slot = np.empty(n, dtype=np.int64)
    for i in range(n):
        best_val[i], best_slot[i] = _best_partner(D[i], nodes, int(nodes[i]))

    merges: list[Merge] = []
    for step in range(n - 1):
        m = best_val.min()
        rows = np.flatnonzero(best_val == m)
        if rows.size == 1:
            r = int(rows[0])
        else:
            pa = nodes[rows]
            pb = nodes[best_slot[rows]]
            lo = np.minimum(pa, pb)
            hi = np.maximum(pa, pb)
            r = int(rows[np.lexsort((hi, lo))[0]])
        s = int(best_slot[r])

        left = int(min(nodes[r], nodes[s]))
        right = int(max(nodes[r], nodes[s]))
        new_node = n + step
        merges.append(Merge(left=left, right=right, height=float(m), node=new_node))

        keep, drop = (r, s) if r < s else (s, r)
        merged_row = np.maximum(D[keep], D[drop])
        merged_row[keep] = np.inf
        D[keep, :] = merged_row
        D[:, keep] = merged_row
        D[drop, :] = np.inf
        D[:, drop] = np.inf
        nodes[keep] = new_node
        best_val[drop] = np.inf
        best_slot[drop] = -1

        # complete linkage only grows distances, so cached row minima stay
        # valid unless they pointed at one of the merged slots
        stale = np.flatnonzero(
            np.isfinite(best_val) & ((best_slot == keep) | (best_slot == drop))
        )
        for k in stale:
            best_val[k], best_slot[k] = _best_partner(D[k], nodes, int(nodes[k]))
        best_val[keep], best_slot[keep] = _best_partner(D[keep], nodes, int(nodes[keep]))

    return Dendrogram(leaves=tuple(str(i) for i in range(n)), merges=tuple(merges))


def relabel(dendrogram: Dendrogram, leaf_ids: list[str]) -> Dendrogram:
    """Replace positional leaf ids with series ids."""
    if len(leaf_ids) != dendrogram.n_leaves:
        raise ValueError("leaf id count does not match the dendrogram")
    return replace(dendrogram, leaves=tuple(leaf_ids))


def dendrogram_for_words(words: list[SaxWord], omega: int) -> Dendrogram:
    """Distance matrix + agglomeration in one go, leaves named by series id."""
    matrix = distance_matrix(words, omega)
    return relabel(agglomerate(matrix), [w.series_id for w in words])


def path_to_leaf(dendrogram: Dendrogram, series_id: str) -> list[str]:
    """Root-to-leaf node id sequence for one observation."""
    index = dendrogram.node_index(series_id)
    if not dendrogram.is_leaf(index):
        raise NotFoundError(f"{series_id!r} is not a leaf")
    path = [index]
    while dendrogram.parent(path[-1]) != -1:
        path.append(dendrogram.parent(path[-1]))
    return [dendrogram.node_id(i) for i in reversed(path)]


@dataclass(frozen=True)
class TreeNode:
    """A visible node of a TreeView."""

    id: str
    size: int
    height: float
    children: tuple[str, ...]
    expanded: bool
    member_ids: tuple[str, ...]


@dataclass(frozen=True, eq=False)
class TreeView:
    """Pruned, expandable presentation of a dendrogram.

    Auto-visible nodes are those larger than min_fraction of the
    collection; anything else only appears after an explicit expand. The
    view is immutable: expand_node returns a new one.
    """

    dendrogram: Dendrogram
    visible: frozenset[int]
    expanded: frozenset[int]
    min_fraction: float

    @property
    def root_id(self) -> str:
        return self.dendrogram.node_id(self.dendrogram.root)

    @property
    def visible_ids(self) -> frozenset[str]:
        return frozenset(self.dendrogram.node_id(i) for i in self.visible)

    def _require_visible(self, node_id: str) -> int:
        index = self.dendrogram.node_index(node_id)
        if index not in self.visible:
            raise NotFoundError(f"node {node_id!r} is not visible in this view")
        return index

    def node(self, node_id: str) -> TreeNode:
        index = self._require_visible(node_id)
        d = self.dendrogram
        return TreeNode(
            id=node_id,
            size=d.size(index),
            height=d.height(index),
            children=tuple(
                d.node_id(c) for c in d.children(index) if c in self.visible
            ),
            expanded=index in self.expanded,
            member_ids=tuple(d.member_ids(index)),
        )

    def _node_json(self, index: int) -> dict:
        d = self.dendrogram
        child_indices = [c for c in d.children(index) if c in self.visible]
        is_leaf = d.is_leaf(index)
        collapsed = not is_leaf and len(child_indices) < len(d.children(index))
        doc = {
            "id": d.node_id(index),
            "size": d.size(index),
            "height": d.height(index),
            "collapsed": collapsed,
            "children": [self._node_json(c) for c in child_indices],
        }
        if collapsed or is_leaf:
            doc["member_ids"] = d.member_ids(index)
        return doc

    def to_json(self) -> dict:
        """Nested tree export; member_ids appear only at the collapsed
        frontier, so the document stays O(n)."""
        return self._node_json(self.dendrogram.root)


def prune_tree(dendrogram: Dendrogram, n_total: int, min_fraction: float = 0.02) -> TreeView:
    """Hide every node not strictly larger than min_fraction of the
    collection; the root is always shown."""
    if not 0.0 <= min_fraction < 1.0:
        raise ValueError(f"min_fraction must be in [0, 1), got {min_fraction}")
    threshold = min_fraction * n_total
    visible = {i for i in range(dendrogram.n_nodes) if dendrogram.size(i) > threshold}
    visible.add(dendrogram.root)
    return TreeView(
        dendrogram=dendrogram,
        visible=frozenset(visible),
        expanded=frozenset(),
        min_fraction=min_fraction,
    )


def expand_node(view: TreeView, node_id: str) -> TreeView:
    """Reveal a visible node's immediate children regardless of their size.

    Idempotent; expanding a leaf is a no-op. Hidden or unknown nodes raise
    NotFoundError.
    """
    index = view._require_visible(node_id)
    children = view.dendrogram.children(index)
    if not children:
        return view
    if index in view.expanded and all(c in view.visible for c in children):
        return view
    return replace(
        view,
        visible=view.visible | frozenset(children),
        expanded=view.expanded | {index},
    )
