"""Evidence-backed recommendations for partially specified designs.

A query is a partial assignment: bindings of some dimensions to values.
Records matching every binding form the evidence set.  For each unbound
dimension, every value observed in the evidence set is recommended with
confidence = its share of the evidence set (percent); values absent from
the evidence set but present in the dimension's domain are reported as
gaps, i.e. combinations the corpus offers no precedent for.

An empty evidence set is a legal outcome, flagged ``no_evidence``, with
empty recommendations and every unbound domain reported as a gap.

The navigation tree materializes the same statistics for every prefix of
a fixed dimension ordering, so interactive exploration needs no rescans.
Stored nodes cover only observed value combinations (at most N paths);
descending through an in-domain but unobserved value is still legal and
yields zero counts all the way down, with the missing children derived
from the domains at view time.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .dataset import Dataset
from .errors import UnknownDimensionError, UnknownValueError

__all__ = [
    "ValueStat",
    "Recommendation",
    "TreeNode",
    "NavigationTree",
    "NodeView",
    "matches",
    "recommend",
    "gaps",
    "build_tree",
    "descend",
    "export_recommendation_json",
    "export_tree_json",
]


@dataclass(frozen=True)
class ValueStat:
    value: str
    confidence: float
    count: int


@dataclass(frozen=True)
class Recommendation:
    match_count: int
    recommendations: Mapping[str, tuple[ValueStat, ...]]
    gaps: Mapping[str, tuple[str, ...]]
    no_evidence: bool


@dataclass(frozen=True)
class TreeNode:
    """One observed prefix of the dimension ordering; children keyed by value.

    Only values observed among the node's matching records get child
    nodes, so counts are all positive and sum to the parent's count.
    """

    count: int
    children: Mapping[str, "TreeNode"]


@dataclass(frozen=True)
class NavigationTree:
    order: tuple[str, ...]
    root: TreeNode
    domains: Mapping[str, tuple[str, ...]]


@dataclass(frozen=True)
class NodeView:
    """Statistics at one point of a guided walk down the tree."""

    path: tuple[str, ...]
    depth: int
    dimension: str | None
    count: int
    children: tuple[tuple[str, int], ...]
    gaps: tuple[str, ...]


def _validated(dataset: Dataset, bindings: Mapping[str, str]) -> dict[int, int]:
    """Bindings as {dimension index: value code}; raises on unknown names/values."""
    coded = {}
    for name, value in bindings.items():
        di = dataset.index_of(name)
        domain = dataset.dimensions[di].domain
        if value not in domain:
            raise UnknownValueError(
                f"dimension {name!r} has no value {value!r}; domain is {list(domain)}"
            )
        coded[di] = domain.index(value)
    return coded


def matches(dataset: Dataset, bindings: Mapping[str, str]) -> set[str]:
    """Ids of records satisfying every binding."""
    coded = _validated(dataset, bindings)
    out = set()
    for row, rec in zip(dataset.codes, dataset.records):
        if all(row[di] == code for di, code in coded.items()):
            out.add(rec.id)
    return out


def recommend(dataset: Dataset, bindings: Mapping[str, str]) -> Recommendation:
    """Evidence-based value statistics for every unbound dimension."""
    coded = _validated(dataset, bindings)
    hit_rows = [
        row
        for row in dataset.codes
        if all(row[di] == code for di, code in coded.items())
    ]
    match_count = len(hit_rows)

    recs: dict[str, tuple[ValueStat, ...]] = {}
    gap_map: dict[str, tuple[str, ...]] = {}
    for di, dim in enumerate(dataset.dimensions):
        if di in coded:
            continue
        counts = [0] * len(dim.domain)
        for row in hit_rows:
            counts[row[di]] += 1
        stats = [
            ValueStat(value, 100.0 * c / match_count, c)
            for value, c in zip(dim.domain, counts)
            if c > 0
        ]
        stats.sort(key=lambda s: (-s.count, dim.domain.index(s.value)))
        recs[dim.name] = tuple(stats)
        gap_map[dim.name] = tuple(v for v, c in zip(dim.domain, counts) if c == 0)
    return Recommendation(
        match_count=match_count,
        recommendations=recs,
        gaps=gap_map,
        no_evidence=match_count == 0,
    )


def gaps(dataset: Dataset, bindings: Mapping[str, str]) -> dict[str, tuple[str, ...]]:
    """Unevidenced values per unbound dimension, given the bindings."""
    return dict(recommend(dataset, bindings).gaps)


def build_tree(dataset: Dataset, order: Sequence[str] | None = None) -> NavigationTree:
    """Navigation tree over the given dimension ordering (default: dataset order).

    The ordering must be a permutation of the dataset's dimension names.
    Children are stored in domain order, including zero-count branches.
    """
    if order is None:
        order = dataset.names
    for name in order:
        dataset.index_of(name)
    if len(set(order)) != len(order) or len(order) != dataset.n_dimensions:
        raise ValueError(
            f"order must be a permutation of the dataset's dimensions, got {list(order)}"
        )

    dims = [dataset.index_of(name) for name in order]

    def grow(rows: list, level: int) -> TreeNode:
        if level == len(dims):
            return TreeNode(count=len(rows), children={})
        di = dims[level]
        children = {}
        for code, value in enumerate(dataset.dimensions[di].domain):
            sub = [r for r in rows if r[di] == code]
            if sub:
                children[value] = grow(sub, level + 1)
        return TreeNode(count=len(rows), children=children)

    root = grow(list(dataset.codes), 0)
    domains = {name: dataset.domain_of(name) for name in order}
    return NavigationTree(order=tuple(order), root=root, domains=domains)


def descend(tree: NavigationTree, path: Sequence[str]) -> NodeView:
    """Follow a value path from the root; returns the node's statistics.

    The path may legally run through unobserved values (count drops to
    zero and stays there).  A path longer than the ordering, or with a
    value outside the level's domain, is an error.
    """
    if len(path) > len(tree.order):
        raise ValueError(
            f"path has {len(path)} steps but the tree is {len(tree.order)} deep"
        )
    node: TreeNode | None = tree.root
    for level, value in enumerate(path):
        dim = tree.order[level]
        if value not in tree.domains[dim]:
            raise UnknownValueError(
                f"dimension {dim!r} has no value {value!r}; "
                f"domain is {list(tree.domains[dim])}"
            )
        if node is not None:
            node = node.children.get(value)

    depth = len(path)
    if depth < len(tree.order):
        next_dim = tree.order[depth]
        stored = node.children if node is not None else {}
        children = tuple(
            (value, stored[value].count if value in stored else 0)
            for value in tree.domains[next_dim]
        )
        gap_values = tuple(value for value, count in children if count == 0)
    else:
        next_dim = None
        children = ()
        gap_values = ()
    return NodeView(
        path=tuple(path),
        depth=depth,
        dimension=next_dim,
        count=node.count if node is not None else 0,
        children=children,
        gaps=gap_values,
    )


def export_recommendation_json(rec: Recommendation, meta: dict | None = None) -> str:
    doc: dict = {}
    if meta is not None:
        doc["meta"] = meta
    doc["match_count"] = rec.match_count
    doc["recommendations"] = {
        dim: [
            {"value": s.value, "confidence": s.confidence, "count": s.count}
            for s in stats
        ]
        for dim, stats in rec.recommendations.items()
    }
    doc["gaps"] = {dim: list(values) for dim, values in rec.gaps.items()}
    doc["no_evidence"] = rec.no_evidence
    return json.dumps(doc, indent=2) + "\n"


def export_tree_json(
    tree: NavigationTree, max_depth: int | None = None, meta: dict | None = None
) -> str:
    """Tree as nested JSON; ``max_depth`` truncates below that many levels."""

    def node_doc(node: TreeNode, depth: int) -> dict:
        doc: dict = {"count": node.count}
        if node.children and (max_depth is None or depth < max_depth):
            doc["children"] = {
                value: node_doc(child, depth + 1)
                for value, child in node.children.items()
            }
        return doc

    doc: dict = {}
    if meta is not None:
        doc["meta"] = meta
    doc["order"] = list(tree.order)
    doc["root"] = node_doc(tree.root, 0)
    return json.dumps(doc, indent=2) + "\n"


def walk(tree: NavigationTree) -> Iterator[tuple[tuple[str, ...], TreeNode]]:
    """Depth-first (path, node) pairs over the whole tree."""

    def visit(node: TreeNode, path: tuple[str, ...]):
        yield path, node
        for value, child in node.children.items():
            yield from visit(child, path + (value,))

    yield from visit(tree.root, ())
