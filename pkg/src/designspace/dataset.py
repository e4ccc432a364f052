"""Categorical design-decision datasets: loading, validation, summaries.

A dataset is a rectangular table of N records over M named dimensions.
Every cell holds exactly one category label; the domain of each dimension
is inferred from the data, in first-occurrence order.  Cells are compared
case-sensitively after stripping surrounding whitespace, and a category
that appears in no record cannot exist (domains are observed, not declared).
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass
from typing import IO, Union

import numpy as np

from .errors import DatasetError, UnknownDimensionError

__all__ = [
    "Dimension",
    "Record",
    "Dataset",
    "read_dataset",
    "to_delimited",
    "summarize",
    "export_summary_json",
]

Source = Union[str, "os.PathLike[str]", IO[str]]


@dataclass(frozen=True)
class Dimension:
    """A named categorical axis together with its observed domain."""

    name: str
    domain: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.name:
            raise DatasetError("dimension name must be non-empty")
        if not self.domain:
            raise DatasetError(f"dimension {self.name!r} has an empty domain")
        if len(set(self.domain)) != len(self.domain):
            raise DatasetError(f"dimension {self.name!r} has duplicate domain labels")


@dataclass(frozen=True)
class Record:
    """One classified design: an id plus one label per dimension, positionally aligned."""

    id: str
    values: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.id:
            raise DatasetError("record id must be non-empty")


@dataclass(frozen=True)
class Dataset:
    """Immutable collection of records over a fixed list of dimensions.

    Invariants enforced at construction: at least one record and one
    dimension, unique dimension names, unique record ids, every value a
    member of its dimension's domain, and every domain label observed in
    at least one record.
    """

    dimensions: tuple[Dimension, ...]
    records: tuple[Record, ...]

    def __post_init__(self) -> None:
        if not self.dimensions:
            raise DatasetError("dataset must have at least one dimension")
        if not self.records:
            raise DatasetError("dataset must have at least one record")
        names = [d.name for d in self.dimensions]
        if len(set(names)) != len(names):
            dup = next(n for n in names if names.count(n) > 1)
            raise DatasetError(f"duplicate dimension name {dup!r}")
        ids = [r.id for r in self.records]
        if len(set(ids)) != len(ids):
            dup = next(i for i in ids if ids.count(i) > 1)
            raise DatasetError(f"duplicate record id {dup!r}")

        m = len(self.dimensions)
        value_index = [{v: c for c, v in enumerate(d.domain)} for d in self.dimensions]
        codes = np.empty((len(self.records), m), dtype=np.int64)
        for i, rec in enumerate(self.records):
            if len(rec.values) != m:
                raise DatasetError(
                    f"record {rec.id!r} has {len(rec.values)} values, expected {m}"
                )
            for j, value in enumerate(rec.values):
                try:
                    codes[i, j] = value_index[j][value]
                except KeyError:
                    raise DatasetError(
                        f"record {rec.id!r}: value {value!r} is not in the domain "
                        f"of dimension {self.dimensions[j].name!r}"
                    ) from None
        for j, dim in enumerate(self.dimensions):
            seen = np.unique(codes[:, j])
            if len(seen) != len(dim.domain):
                missing = set(range(len(dim.domain))) - set(seen.tolist())
                label = dim.domain[min(missing)]
                raise DatasetError(
                    f"dimension {dim.name!r}: domain label {label!r} appears in no record"
                )
        codes.setflags(write=False)
        object.__setattr__(self, "_codes", codes)
        object.__setattr__(self, "_dim_index", {n: j for j, n in enumerate(names)})

    @property
    def n_records(self) -> int:
        return len(self.records)

    @property
    def n_dimensions(self) -> int:
        return len(self.dimensions)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(d.name for d in self.dimensions)

    @property
    def record_ids(self) -> tuple[str, ...]:
        return tuple(r.id for r in self.records)

    @property
    def codes(self) -> np.ndarray:
        """Integer-coded value matrix of shape (N, M); codes index each domain."""
        return self._codes  # type: ignore[attr-defined]

    def index_of(self, name: str) -> int:
        try:
            return self._dim_index[name]  # type: ignore[attr-defined]
        except KeyError:
            raise UnknownDimensionError(f"unknown dimension {name!r}") from None

    def domain_of(self, name: str) -> tuple[str, ...]:
        """Observed domain of a dimension, in first-occurrence order."""
        return self.dimensions[self.index_of(name)].domain


def read_dataset(source: Source, *, delimiter: str = ",") -> Dataset:
    """Load a dataset from delimiter-separated text.

    ``source`` is a file path or any object with a ``read`` method yielding
    text.  The first row is the header: its first column holds record ids
    and the remaining columns name the dimensions.  Fields may be quoted
    with double quotes (doubled to escape).  Empty cells and ragged rows
    are hard errors; there is no implicit missing-value category.
    """
    if hasattr(source, "read"):
        return _parse(source, delimiter)  # type: ignore[arg-type]
    with open(source, encoding="utf-8-sig", newline="") as fh:  # type: ignore[arg-type]
        return _parse(fh, delimiter)


def _parse(stream: IO[str], delimiter: str) -> Dataset:
    rows = list(csv.reader(stream, delimiter=delimiter))
    if not rows:
        raise DatasetError("input is empty")
    header = [cell.strip() for cell in rows[0]]
    if len(header) < 2:
        raise DatasetError("header must contain an id column and at least one dimension")
    names = header[1:]
    for n in names:
        if not n:
            raise DatasetError("header contains an empty dimension name")
    if len(set(names)) != len(names):
        dup = next(n for n in names if names.count(n) > 1)
        raise DatasetError(f"duplicate dimension name {dup!r}")

    ids: list[str] = []
    table: list[tuple[str, ...]] = []
    for lineno, raw in enumerate(rows[1:], start=2):
        if len(raw) != len(header):
            raise DatasetError(
                f"row {lineno}: expected {len(header)} fields, found {len(raw)}"
            )
        cells = [cell.strip() for cell in raw]
        rid = cells[0]
        if not rid:
            raise DatasetError(f"row {lineno}: empty record id")
        for col, value in zip(names, cells[1:]):
            if not value:
                raise DatasetError(f"row {lineno}: empty cell in dimension {col!r}")
        ids.append(rid)
        table.append(tuple(cells[1:]))
    if not table:
        raise DatasetError("dataset must have at least one record")

    dimensions = []
    for j, name in enumerate(names):
        domain: list[str] = []
        seen: set[str] = set()
        for row in table:
            if row[j] not in seen:
                seen.add(row[j])
                domain.append(row[j])
        dimensions.append(Dimension(name, tuple(domain)))
    records = tuple(Record(rid, row) for rid, row in zip(ids, table))
    return Dataset(tuple(dimensions), records)


def to_delimited(dataset: Dataset, *, delimiter: str = ",") -> str:
    """Canonical re-serialization; reparsing yields an equal Dataset."""
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter=delimiter, lineterminator="\n")
    writer.writerow(["id", *dataset.names])
    for rec in dataset.records:
        writer.writerow([rec.id, *rec.values])
    return buf.getvalue()


def summarize(dataset: Dataset) -> dict[str, dict[str, int]]:
    """Per-dimension category frequencies; counts in each dimension sum to N."""
    out: dict[str, dict[str, int]] = {}
    for j, dim in enumerate(dataset.dimensions):
        counts = np.bincount(dataset.codes[:, j], minlength=len(dim.domain))
        out[dim.name] = {v: int(c) for v, c in zip(dim.domain, counts)}
    return out


def export_summary_json(dataset: Dataset) -> str:
    return json.dumps(summarize(dataset), indent=2) + "\n"
