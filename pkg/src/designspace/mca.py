"""Multiple correspondence analysis of a categorical dataset.

Correspondence analysis of the indicator (complete disjunctive) coding:
with N records, Q variables and J total categories, the correspondence
matrix is P = Z/(NQ), row masses are 1/N, column masses are the category
frequencies over NQ, and the principal inertias are the squared singular
values of the standardized residual matrix

    S = (P - r c^T) / sqrt(r c^T).

Total inertia is (J - Q)/Q.  The structural dimensionality is J - Q;
the inertia list always has that length, with rank-deficient axes
reported as exact zeros (singular values below 1e-10 of the largest are
treated as zero).  Category contributions to an axis are c_j * g^2 / lambda
for principal coordinate g.

Variance percentages use the optimistic Benzecri re-expression: axes with
inertia above 1/Q are adjusted to ((Q/(Q-1)) * (lambda - 1/Q))^2 and
percentages are taken over the sum of adjusted values, so the surviving
axes always total 100%.  (The pessimistic variant, which divides by the
adjusted total inertia instead, is deliberately not implemented.)
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .dataset import Dataset
from .errors import DegenerateInputError

__all__ = [
    "McaResult",
    "indicator_matrix",
    "category_columns",
    "mca",
    "benzecri_correct",
    "retain_dimensions",
    "top_contributions",
    "scree_rows",
    "contribution_rows",
    "export_scree_csv",
    "export_contributions_csv",
]

_RANK_CUTOFF = 1e-10


@dataclass(frozen=True)
class McaResult:
    """Decomposition output; arrays are truncated to the positive-inertia axes."""

    n_records: int
    n_variables: int
    n_categories: int
    category_labels: tuple[tuple[str, str], ...]
    inertias: tuple[float, ...]
    corrected: tuple[tuple[float, float], ...]
    category_masses: np.ndarray = field(compare=False, repr=False)
    category_coords: np.ndarray = field(compare=False, repr=False)
    contributions: np.ndarray = field(compare=False, repr=False)
    record_ids: tuple[str, ...] = ()
    record_coords: np.ndarray = field(compare=False, repr=False, default=None)  # type: ignore[assignment]

    @property
    def n_axes(self) -> int:
        """Number of axes with strictly positive inertia."""
        return self.category_coords.shape[1]


def category_columns(dataset: Dataset) -> tuple[tuple[str, str], ...]:
    """(variable, category) label per indicator column, variable-major order."""
    return tuple(
        (dim.name, value) for dim in dataset.dimensions for value in dim.domain
    )


def indicator_matrix(dataset: Dataset) -> np.ndarray:
    """Binary N x J matrix; each row has exactly Q ones."""
    offsets = np.cumsum([0] + [len(d.domain) for d in dataset.dimensions[:-1]])
    j_total = sum(len(d.domain) for d in dataset.dimensions)
    z = np.zeros((dataset.n_records, j_total), dtype=np.int64)
    cols = dataset.codes + offsets[None, :]
    z[np.arange(dataset.n_records)[:, None], cols] = 1
    return z


def mca(dataset: Dataset) -> McaResult:
    """Indicator-matrix correspondence analysis of the dataset."""
    q = dataset.n_dimensions
    n = dataset.n_records
    z = indicator_matrix(dataset).astype(np.float64)
    j = z.shape[1]
    if j == q:
        raise DegenerateInputError(
            "every variable has a single observed category: total inertia is zero"
        )

    total = n * q
    p = z / total
    col_masses = z.sum(axis=0) / total
    row_mass = 1.0 / n
    expected = row_mass * col_masses[None, :]
    s = (p - expected) / np.sqrt(expected)

    u, sig, vt = np.linalg.svd(s, full_matrices=False)
    if sig.size and sig[0] > 0:
        sig = np.where(sig < _RANK_CUTOFF * sig[0], 0.0, sig)

    structural = j - q
    lams = np.zeros(structural)
    upto = min(structural, sig.size)
    lams[:upto] = sig[:upto] ** 2
    n_pos = int(np.count_nonzero(lams))

    std_coords = vt[:n_pos].T / np.sqrt(col_masses)[:, None]
    principal = std_coords * sig[:n_pos]
    contrib = col_masses[:, None] * principal**2 / lams[:n_pos]
    record_coords = u[:, :n_pos] * sig[:n_pos] * np.sqrt(n)

    inertias = tuple(float(v) for v in lams)
    # The Benzecri re-expression divides by Q-1; with a single variable
    # there is no correction to apply and no axis survives.
    corrected = benzecri_correct(inertias, q) if q >= 2 else []
    return McaResult(
        n_records=n,
        n_variables=q,
        n_categories=j,
        category_labels=category_columns(dataset),
        inertias=inertias,
        corrected=tuple(corrected),
        category_masses=col_masses,
        category_coords=principal,
        contributions=contrib,
        record_ids=dataset.record_ids,
        record_coords=record_coords,
    )


def benzecri_correct(
    inertias: Sequence[float], q: int
) -> list[tuple[float, float]]:
    """Optimistic Benzecri adjustment: [(adjusted inertia, percent)] per
    surviving axis.

    Only axes with inertia strictly above 1/Q survive; an axis at exactly
    1/Q adjusts to zero and is excluded.  Percentages are over the sum of
    adjusted values and therefore total 100 whenever any axis survives;
    the empty list (no survivor) is a valid, non-error outcome.
    """
    if not isinstance(q, (int, np.integer)) or q < 2:
        raise ValueError("q must be an integer >= 2")
    lams = [float(v) for v in inertias]
    for v in lams:
        if not -1e-9 <= v <= 1 + 1e-9:
            raise ValueError(f"inertia {v} outside [0, 1]")
    if any(a < b - 1e-12 for a, b in zip(lams, lams[1:])):
        raise ValueError("inertias must be in descending order")

    factor = q / (q - 1)
    adjusted = [
        (factor * (lam - 1 / q)) ** 2 for lam in lams if lam > 1 / q
    ]
    total = sum(adjusted)
    if not adjusted:
        return []
    return [(adj, 100.0 * adj / total) for adj in adjusted]


def retain_dimensions(
    percentages: Sequence[float], threshold: float
) -> tuple[int, list[int]]:
    """Axes (1-based) whose variance percentage strictly exceeds the threshold."""
    total = sum(percentages)
    if total > 100 + 1e-9:
        raise ValueError(f"percentages sum to {total}, above 100")
    retained = [axis for axis, pct in enumerate(percentages, start=1) if pct > threshold]
    return len(retained), retained


def top_contributions(
    result: McaResult, axis: int, n: int
) -> tuple[list[tuple[str, str, float]], float]:
    """Top-n categories of an axis by contribution percentage, plus the
    uniform baseline 100/J.

    Ties keep variable-major column order.  ``axis`` is 1-based over the
    positive-inertia axes.
    """
    if not 1 <= axis <= result.n_axes:
        raise ValueError(f"axis must be in [1, {result.n_axes}], got {axis}")
    if not 1 <= n <= result.n_categories:
        raise ValueError(f"n must be in [1, {result.n_categories}], got {n}")
    col = result.contributions[:, axis - 1] * 100.0
    order = sorted(range(len(col)), key=lambda i: (-col[i], i))
    ranked = [
        (result.category_labels[i][0], result.category_labels[i][1], float(col[i]))
        for i in order[:n]
    ]
    return ranked, 100.0 / result.n_categories


def scree_rows(result: McaResult) -> list[dict]:
    """Corrected variance percentage per surviving axis (scree plot data)."""
    return [
        {"axis": axis, "corrected_percentage": float(pct)}
        for axis, (_, pct) in enumerate(result.corrected, start=1)
    ]


def contribution_rows(result: McaResult, axes: Sequence[int] | None = None) -> list[dict]:
    """Ranked contribution percentages with the uniform baseline, per axis."""
    if axes is None:
        axes = range(1, result.n_axes + 1)
    baseline = 100.0 / result.n_categories
    rows = []
    for axis in axes:
        ranked, _ = top_contributions(result, axis, result.n_categories)
        rows.extend(
            {
                "axis": axis,
                "variable": var,
                "category": cat,
                "contribution_percent": pct,
                "baseline_percent": baseline,
            }
            for var, cat, pct in ranked
        )
    return rows


def export_scree_csv(result: McaResult, meta: dict | None = None) -> str:
    lines = []
    if meta is not None:
        lines.append("# " + json.dumps(meta, sort_keys=True))
    lines.append("axis,corrected_percentage")
    lines.extend(
        f"{row['axis']},{row['corrected_percentage']:.12g}" for row in scree_rows(result)
    )
    return "\n".join(lines) + "\n"


def export_contributions_csv(
    result: McaResult, axes: Sequence[int] | None = None, meta: dict | None = None
) -> str:
    lines = []
    if meta is not None:
        lines.append("# " + json.dumps(meta, sort_keys=True))
    lines.append("axis,variable,category,contribution_percent,baseline_percent")
    for row in contribution_rows(result, axes):
        lines.append(
            f"{row['axis']},{_csv_field(row['variable'])},{_csv_field(row['category'])},"
            f"{row['contribution_percent']:.12g},{row['baseline_percent']:.12g}"
        )
    return "\n".join(lines) + "\n"


def _csv_field(value: str) -> str:
    if any(ch in value for ch in ',"\n'):
        return '"' + value.replace('"', '""') + '"'
    return value
