"""Gower distance for all-categorical records.

With purely categorical dimensions the Gower distance between two records
is the fraction of dimensions on which they disagree: the per-dimension
mismatch indicator averaged over all M dimensions.  Every distance is
therefore k/M for some integer k, and the matrix is a metric (it is the
Hamming distance scaled by 1/M).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .dataset import Dataset, Record

__all__ = ["DistanceMatrix", "gower_distance", "distance_matrix", "export_matrix_json"]


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric N x N matrix of distances in [0, 1] with zero diagonal."""

    ids: tuple[str, ...]
    values: np.ndarray = field(compare=False, repr=False)

    def __post_init__(self) -> None:
        arr = np.array(self.values, dtype=np.float64)
        n = len(self.ids)
        if arr.shape != (n, n):
            raise ValueError(f"expected a {n}x{n} matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("distance matrix contains non-finite entries")
        if np.any(arr < 0) or np.any(arr > 1):
            raise ValueError("distances must lie in [0, 1]")
        if not np.array_equal(arr, arr.T):
            raise ValueError("distance matrix must be symmetric")
        if np.any(np.diagonal(arr) != 0):
            raise ValueError("distance matrix must have a zero diagonal")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def size(self) -> int:
        return len(self.ids)


def _values_of(x: Record | Sequence[str]) -> tuple[str, ...]:
    return x.values if isinstance(x, Record) else tuple(x)


def gower_distance(a: Record | Sequence[str], b: Record | Sequence[str]) -> float:
    """Fraction of dimensions on which two records differ.

    The result is exactly k/M (to within one ulp) for k differing
    dimensions out of M.  Raises ValueError when the records do not cover
    the same number of dimensions.
    """
    va, vb = _values_of(a), _values_of(b)
    if len(va) != len(vb):
        raise ValueError(
            f"records cover different dimension counts ({len(va)} vs {len(vb)})"
        )
    if not va:
        raise ValueError("records must have at least one dimension")
    mismatches = sum(x != y for x, y in zip(va, vb))
    return mismatches / len(va)


def distance_matrix(dataset: Dataset) -> DistanceMatrix:
    """Full pairwise Gower distance matrix of a dataset."""
    codes = dataset.codes
    m = dataset.n_dimensions
    mismatches = (codes[:, None, :] != codes[None, :, :]).sum(axis=2)
    return DistanceMatrix(dataset.record_ids, mismatches / m)


def export_matrix_json(matrix: DistanceMatrix, meta: dict | None = None) -> str:
    """JSON export with record ids and row-major entries at 12 significant digits."""
    rows = [[float(f"{v:.12g}") for v in row] for row in matrix.values]
    doc: dict = {}
    if meta is not None:
        doc["meta"] = meta
    doc["ids"] = list(matrix.ids)
    doc["distances"] = rows
    return json.dumps(doc, indent=2) + "\n"
