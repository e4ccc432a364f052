"""Dataset builders shared across the suite."""

from __future__ import annotations

import numpy as np

from designspace.dataset import Dataset, Dimension, Record


def make_dataset(columns, rows, ids=None) -> Dataset:
    """Dataset from column names and value rows; domains inferred in
    first-occurrence order, ids defaulting to p1..pN."""
    if ids is None:
        ids = [f"p{i + 1}" for i in range(len(rows))]
    domains: list[list[str]] = [[] for _ in columns]
    for row in rows:
        for j, value in enumerate(row):
            if value not in domains[j]:
                domains[j].append(value)
    dimensions = tuple(
        Dimension(name, tuple(domain)) for name, domain in zip(columns, domains)
    )
    records = tuple(Record(rid, tuple(row)) for rid, row in zip(ids, rows))
    return Dataset(dimensions, records)


def random_dataset(
    rng: np.random.Generator,
    n_max: int = 20,
    m_max: int = 9,
    pool_max: int = 5,
    n_min: int = 1,
) -> Dataset:
    """Random dataset with N in [n_min, n_max], M in [1, m_max]; per-column
    label pools of up to pool_max values (observed domains can be smaller)."""
    n = int(rng.integers(n_min, n_max + 1))
    m = int(rng.integers(1, m_max + 1))
    pools = [int(rng.integers(1, pool_max + 1)) for _ in range(m)]
    rows = [
        tuple(f"v{int(rng.integers(0, pools[j]))}" for j in range(m))
        for _ in range(n)
    ]
    return make_dataset([f"D{j + 1}" for j in range(m)], rows)


def two_blob(n_a: int = 10, n_b: int = 10, m: int = 9) -> Dataset:
    """Planted structure: n_a copies of one row and n_b of a fully
    different row, so within-blob distance is 0 and between is 1."""
    rows = [tuple("a" for _ in range(m))] * n_a + [tuple("b" for _ in range(m))] * n_b
    return make_dataset([f"D{j + 1}" for j in range(m)], rows)


def correlated_binary() -> Dataset:
    """Two perfectly correlated binary variables, N=4 balanced."""
    return make_dataset(["A", "B"], [("x", "u"), ("x", "u"), ("y", "v"), ("y", "v")])


def blob_labels(dataset: Dataset) -> dict[str, int]:
    """Planted-blob ground truth: cluster by the first dimension's value."""
    first = {}
    labels = {}
    for rec in dataset.records:
        value = rec.values[0]
        first.setdefault(value, len(first) + 1)
        labels[rec.id] = first[value]
    return labels
