"""Hierarchical agglomerative clustering with deterministic, exact merges.

Operates on a precomputed distance matrix.  At each step the two closest
active clusters under the linkage rule (single = min, complete = max,
average = size-weighted mean via the Lance-Williams recurrence) are merged.

Inter-cluster distances are tracked as exact rationals over the matrix
entries (every float is a rational), so equal distances are genuine ties
rather than rounding accidents.  Ties are broken by the lowest record
index contained in the pair, then by the other cluster's lowest index,
which makes the merge sequence a pure function of the input and lets a
naive from-scratch reference reproduce it bit for bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .dataset import Dataset
from .errors import UnknownDimensionError
from .gower import DistanceMatrix

__all__ = [
    "LINKAGES",
    "Merge",
    "Dendrogram",
    "Partition",
    "cluster",
    "cut",
    "partition_by_dimension",
    "export_dendrogram",
    "export_partition_csv",
    "to_newick",
]

LINKAGES = ("single", "complete", "average")


@dataclass(frozen=True)
class Merge:
    """One agglomeration step: nodes merged and the linkage distance."""

    left: int
    right: int
    height: float


@dataclass(frozen=True)
class Dendrogram:
    """Binary merge tree over N leaves.

    Leaves are nodes 0..N-1 in record order; the t-th merge creates node
    N+t.  ``left`` is always the side containing the smaller record index.
    Heights are non-decreasing for the supported linkages.
    """

    leaf_ids: tuple[str, ...]
    merges: tuple[Merge, ...]
    linkage: str

    @property
    def n_leaves(self) -> int:
        return len(self.leaf_ids)


@dataclass(frozen=True)
class Partition:
    """Record-id to cluster-index labeling, indices 1..k, every cluster non-empty."""

    labels: dict[str, int]
    k: int

    def members(self, index: int) -> tuple[str, ...]:
        return tuple(rid for rid, c in self.labels.items() if c == index)

    def clusters(self) -> tuple[tuple[str, ...], ...]:
        return tuple(self.members(i) for i in range(1, self.k + 1))


def _merge_sequence(values: np.ndarray, linkage: str) -> list[Merge]:
    """Exact HAC merge sequence for a symmetric distance matrix.

    Working distances are Fractions of the input floats; reported heights
    are those exact values rounded once to float.
    """
    n = values.shape[0]
    exact = [[Fraction(float(values[i, j])) for j in range(n)] for i in range(n)]
    screen = values.astype(np.float64).copy()
    np.fill_diagonal(screen, np.inf)

    alive = [True] * n
    size = [1] * n
    minidx = list(range(n))
    node = list(range(n))
    merges: list[Merge] = []

    for t in range(n - 1):
        # Float screen: the exact minimum always rounds to the float minimum,
        # so candidates at the float minimum form a superset of exact minima.
        m = screen.min()
        cand = np.argwhere(screen == m)
        best_pair: tuple[int, int] | None = None
        best_val: Fraction | None = None
        best_key: tuple[int, int] | None = None
        for i, j in cand:
            if i >= j:
                continue
            w = exact[i][j]
            key = (min(minidx[i], minidx[j]), max(minidx[i], minidx[j]))
            if (
                best_val is None
                or w < best_val
                or (w == best_val and key < best_key)  # type: ignore[operator]
            ):
                best_val, best_key, best_pair = w, key, (int(i), int(j))
        assert best_pair is not None and best_val is not None
        i, j = best_pair
        a, b = (i, j) if minidx[i] < minidx[j] else (j, i)
        merges.append(Merge(node[a], node[b], float(best_val)))

        for kk in range(n):
            if not alive[kk] or kk in (a, b):
                continue
            if linkage == "average":
                w = (size[a] * exact[a][kk] + size[b] * exact[b][kk]) / (
                    size[a] + size[b]
                )
            elif linkage == "single":
                w = min(exact[a][kk], exact[b][kk])
            else:
                w = max(exact[a][kk], exact[b][kk])
            exact[a][kk] = exact[kk][a] = w
            screen[a, kk] = screen[kk, a] = float(w)
        alive[b] = False
        screen[b, :] = np.inf
        screen[:, b] = np.inf
        size[a] += size[b]
        minidx[a] = min(minidx[a], minidx[b])
        node[a] = n + t
    return merges


def cluster(matrix: DistanceMatrix, linkage: str = "average") -> Dendrogram:
    """Agglomerate a distance matrix into a dendrogram of N-1 merges."""
    if linkage not in LINKAGES:
        raise ValueError(f"unsupported linkage {linkage!r}; expected one of {LINKAGES}")
    if matrix.size < 1:
        raise ValueError("cannot cluster an empty matrix")
    merges = _merge_sequence(matrix.values, linkage)
    return Dendrogram(matrix.ids, tuple(merges), linkage)


def _components(n: int, merges: tuple[Merge, ...], k: int) -> list[list[int]]:
    """Leaf-index components after undoing the last k-1 merges, ordered by
    smallest contained record index."""
    comps: dict[int, list[int]] = {i: [i] for i in range(n)}
    for t in range(n - k):
        m = merges[t]
        members = comps.pop(m.left) + comps.pop(m.right)
        comps[n + t] = members
    return sorted(comps.values(), key=min)


def cut(dendrogram: Dendrogram, k: int) -> Partition:
    """Partition into k clusters; indices assigned by smallest record index."""
    n = dendrogram.n_leaves
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    groups = _components(n, dendrogram.merges, k)
    label = [0] * n
    for c, members in enumerate(groups, start=1):
        for i in members:
            label[i] = c
    return Partition({rid: label[i] for i, rid in enumerate(dendrogram.leaf_ids)}, k)


def partition_by_dimension(dataset: Dataset, name: str) -> Partition:
    """One cluster per observed category of a dimension.

    Domain order is first-occurrence order, so indexing clusters by domain
    position coincides with the smallest-record-index rule used by cut().
    """
    j = dataset.index_of(name)
    codes = dataset.codes[:, j]
    labels = {rid: int(c) + 1 for rid, c in zip(dataset.record_ids, codes)}
    return Partition(labels, len(dataset.dimensions[j].domain))


def export_dendrogram(
    dendrogram: Dendrogram,
    overlay: Partition | None = None,
    meta: dict | None = None,
) -> str:
    """JSON export: leaves, merge list, linkage, optional per-leaf overlay colors."""
    doc: dict = {}
    if meta is not None:
        doc["meta"] = meta
    doc["leaves"] = list(dendrogram.leaf_ids)
    doc["merges"] = [
        {"left": m.left, "right": m.right, "height": m.height}
        for m in dendrogram.merges
    ]
    doc["linkage"] = dendrogram.linkage
    if overlay is not None:
        if set(overlay.labels) != set(dendrogram.leaf_ids):
            raise ValueError("overlay labels a different set of record ids")
        doc["overlay"] = {
            "k": overlay.k,
            "colors": [overlay.labels[rid] for rid in dendrogram.leaf_ids],
        }
    return json.dumps(doc, indent=2) + "\n"


def export_partition_csv(partition: Partition, meta: dict | None = None) -> str:
    lines = []
    if meta is not None:
        lines.append("# " + json.dumps(meta, sort_keys=True))
    lines.append("id,cluster")
    lines.extend(f"{rid},{c}" for rid, c in partition.labels.items())
    return "\n".join(lines) + "\n"


_NEWICK_SPECIAL = set(" \t\n()[]:;,'")


def _newick_label(label: str) -> str:
    if any(ch in _NEWICK_SPECIAL for ch in label):
        return "'" + label.replace("'", "''") + "'"
    return label


def to_newick(dendrogram: Dendrogram) -> str:
    """Newick text with branch lengths (parent height minus child height)."""
    n = dendrogram.n_leaves
    if n == 1:
        return f"{_newick_label(dendrogram.leaf_ids[0])};"
    height = {i: 0.0 for i in range(n)}
    children: dict[int, tuple[int, int]] = {}
    for t, m in enumerate(dendrogram.merges):
        children[n + t] = (m.left, m.right)
        height[n + t] = m.height
    root = n + len(dendrogram.merges) - 1

    def render(nd: int) -> str:
        if nd < n:
            return _newick_label(dendrogram.leaf_ids[nd])
        left, right = children[nd]
        parts = []
        for child in (left, right):
            parts.append(f"{render(child)}:{height[nd] - height[child]:g}")
        return "(" + ",".join(parts) + ")"

    return render(root) + ";"
