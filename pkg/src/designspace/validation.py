"""Cluster validation: silhouette analysis and bootstrap stability.

Silhouette follows the Rousseeuw construction: a(i) is the mean distance
to the point's own cluster (excluding itself), b(i) the smallest mean
distance to any other cluster, and s(i) = (b - a) / max(a, b), with the
usual degenerate conventions (singletons score 0, as does max(a, b) = 0).

Stability is cluster-wise bootstrap: each replicate resamples the records
with replacement, re-runs the full Gower + HAC + cut pipeline on the
resample, and matches every original cluster to its best counterpart by
Jaccard similarity over the distinct resampled ids.  A cluster dissolves
in a replicate when that best Jaccard falls below the dissolution
threshold.  Replicate b draws from a numpy PCG64 generator seeded with
SeedSequence([seed, b]), so replicates are independent substreams and the
whole report is a pure function of (dataset, k, B, seed, linkage, t).
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .dataset import Dataset
from .errors import DegenerateInputError
from .gower import DistanceMatrix, distance_matrix
from .hac import LINKAGES, Partition, _components, _merge_sequence, cluster, cut

__all__ = [
    "SilhouetteReport",
    "StabilityReport",
    "silhouette",
    "silhouette_sweep",
    "bootstrap_stability",
    "export_silhouette_json",
    "export_sweep_csv",
    "export_stability_json",
]

logger = logging.getLogger(__name__)

# A replicate whose draw holds fewer than k distinct records is redrawn;
# the cap only guards against k so close to N that redraws cannot succeed.
_MAX_REDRAWS_PER_REPLICATE = 10_000


@dataclass(frozen=True)
class SilhouetteReport:
    k: int
    scores: dict[str, float]
    cluster_means: tuple[float, ...]
    asw: float


@dataclass(frozen=True)
class StabilityReport:
    k: int
    resamples: int
    seed: int
    linkage: str
    threshold: float
    stabilities: tuple[float, ...]
    dissolved: tuple[int, ...]
    redraws: int


def silhouette(matrix: DistanceMatrix, partition: Partition) -> SilhouetteReport:
    """Per-point silhouettes, per-cluster means, and the average width."""
    n = matrix.size
    if set(partition.labels) != set(matrix.ids):
        raise ValueError("partition labels a different set of record ids")
    k = partition.k
    if k < 2:
        raise DegenerateInputError("silhouette is undefined for fewer than 2 clusters")
    lab = np.array([partition.labels[rid] for rid in matrix.ids])
    sizes = np.bincount(lab, minlength=k + 1)[1:]
    if np.any(sizes == 0):
        raise ValueError("every cluster index in 1..k must be non-empty")

    d = matrix.values
    # mean distance from every point to every cluster (self included for now)
    mean_to = np.empty((n, k))
    for c in range(1, k + 1):
        mean_to[:, c - 1] = d[:, lab == c].mean(axis=1)

    s = np.zeros(n)
    for i in range(n):
        own = lab[i] - 1
        if sizes[own] == 1:
            continue  # singleton convention
        a = mean_to[i, own] * sizes[own] / (sizes[own] - 1)
        b = np.min(np.delete(mean_to[i], own))
        denom = max(a, b)
        if denom > 0:
            s[i] = (b - a) / denom

    means = tuple(float(s[lab == c].mean()) for c in range(1, k + 1))
    scores = {rid: float(s[i]) for i, rid in enumerate(matrix.ids)}
    return SilhouetteReport(k, scores, means, float(s.mean()))


def silhouette_sweep(
    matrix: DistanceMatrix, linkage: str, ks: Iterable[int]
) -> list[tuple[int, float]]:
    """Cluster once, cut at each k, and report (k, average silhouette width)."""
    ks = sorted(set(int(k) for k in ks))
    if not ks:
        raise ValueError("empty k range")
    for k in ks:
        if not 2 <= k <= matrix.size:
            raise ValueError(f"k must be in [2, {matrix.size}], got {k}")
    dendrogram = cluster(matrix, linkage)
    return [(k, silhouette(matrix, cut(dendrogram, k)).asw) for k in ks]


def bootstrap_stability(
    dataset: Dataset,
    k: int,
    resamples: int,
    seed: int,
    linkage: str = "average",
    threshold: float = 0.5,
) -> StabilityReport:
    """Cluster-wise bootstrap stability of the k-cluster solution.

    Per replicate: draw N records with replacement, recluster the resample
    through the full pipeline, and score each original cluster C by
    max over resample clusters C' of Jaccard(C intersect R, ids(C')),
    where R is the set of distinct drawn ids.  Stability is the mean of
    that score over replicates; ``dissolved`` counts replicates where it
    fell below ``threshold``.
    """
    n = dataset.n_records
    if not 2 <= k <= n:
        raise ValueError(f"k must be in [2, {n}], got {k}")
    if resamples < 1:
        raise ValueError("resamples must be a positive integer")
    if not isinstance(seed, (int, np.integer)) or seed < 0:
        raise ValueError("seed must be a non-negative integer")
    if not 0 < threshold < 1:
        raise ValueError("dissolution threshold must lie strictly between 0 and 1")
    if linkage not in LINKAGES:
        raise ValueError(f"unsupported linkage {linkage!r}; expected one of {LINKAGES}")

    matrix = distance_matrix(dataset)
    original = [set(c) for c in cut(cluster(matrix, linkage), k).clusters()]
    ids = dataset.record_ids

    sums = [0.0] * k
    dissolved = [0] * k
    redraws = 0
    for b in range(resamples):
        rng = np.random.default_rng([seed, b])
        idx = rng.integers(0, n, size=n)
        attempts = 0
        while len(np.unique(idx)) < k:
            attempts += 1
            if attempts > _MAX_REDRAWS_PER_REPLICATE:
                raise DegenerateInputError(
                    f"replicate {b}: could not draw {k} distinct records from "
                    f"{n} after {attempts - 1} redraws"
                )
            idx = rng.integers(0, n, size=n)
        if attempts:
            redraws += attempts
            logger.info(
                "replicate %d redrawn %d time(s): fewer than %d distinct records",
                b,
                attempts,
                k,
            )
        sub = matrix.values[np.ix_(idx, idx)]
        comps = _components(n, tuple(_merge_sequence(sub, linkage)), k)
        resampled_sets = [{ids[idx[p]] for p in comp} for comp in comps]
        drawn = {ids[i] for i in np.unique(idx)}
        for c, orig in enumerate(original):
            inter = orig & drawn
            if inter:
                best = max(
                    len(inter & other) / len(inter | other) for other in resampled_sets
                )
            else:
                best = 0.0
            sums[c] += best
            if best < threshold:
                dissolved[c] += 1

    return StabilityReport(
        k=k,
        resamples=resamples,
        seed=int(seed),
        linkage=linkage,
        threshold=threshold,
        stabilities=tuple(s / resamples for s in sums),
        dissolved=tuple(dissolved),
        redraws=redraws,
    )


def export_silhouette_json(report: SilhouetteReport, meta: dict | None = None) -> str:
    doc: dict = {}
    if meta is not None:
        doc["meta"] = meta
    doc.update(
        {
            "k": report.k,
            "asw": report.asw,
            "cluster_means": list(report.cluster_means),
            "per_point": [{"id": rid, "s": s} for rid, s in report.scores.items()],
        }
    )
    return json.dumps(doc, indent=2) + "\n"


def export_sweep_csv(sweep: Sequence[tuple[int, float]], meta: dict | None = None) -> str:
    lines = []
    if meta is not None:
        lines.append("# " + json.dumps(meta, sort_keys=True))
    lines.append("k,asw")
    lines.extend(f"{k},{asw:.12g}" for k, asw in sweep)
    return "\n".join(lines) + "\n"


def export_stability_json(report: StabilityReport, meta: dict | None = None) -> str:
    doc: dict = {}
    if meta is not None:
        doc["meta"] = meta
    doc.update(
        {
            "k": report.k,
            "B": report.resamples,
            "seed": report.seed,
            "linkage": report.linkage,
            "threshold": report.threshold,
            "stabilities": list(report.stabilities),
            "dissolved": list(report.dissolved),
            "redraws": report.redraws,
        }
    )
    return json.dumps(doc, indent=2) + "\n"
