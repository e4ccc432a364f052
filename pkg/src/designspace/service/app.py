"""HTTP facade over one immutable dataset.

The dataset is loaded once and never mutated, so identical requests get
identical responses; stochastic endpoints take an explicit seed.  The
per-linkage dendrogram and the correspondence analysis are cached; both
caches are keyed purely by request parameters and never change results.

Analysis responses reuse the library's own serializers, so a response
body is exactly the parsed form of the matching export.
"""

from __future__ import annotations

import json
from functools import lru_cache

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from ..dataset import Dataset, export_summary_json
from ..errors import (
    DegenerateInputError,
    UnknownDimensionError,
    UnknownValueError,
)
from ..gower import distance_matrix
from ..hac import cluster, cut, export_dendrogram, to_newick
from ..mca import contribution_rows, mca, retain_dimensions, scree_rows
from ..recommender import (
    build_tree,
    descend,
    export_recommendation_json,
    recommend,
)
from ..validation import (
    bootstrap_stability,
    export_silhouette_json,
    export_stability_json,
    silhouette,
    silhouette_sweep,
)
from .schemas import (
    ClusterRequest,
    DescendRequest,
    RecommendRequest,
    ValidateRequest,
)


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


def create_app(
    dataset: Dataset,
    cors_origins: list[str] | None = None,
    tree_order: list[str] | None = None,
) -> FastAPI:
    """Service instance bound to one dataset snapshot."""
    app = FastAPI(title="designspace", version="0.1.0")

    if cors_origins:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware,
            allow_origins=cors_origins,
            allow_methods=["*"],
            allow_headers=["*"],
        )

    matrix = distance_matrix(dataset)
    tree = build_tree(dataset, tree_order)

    @lru_cache(maxsize=None)
    def dendrogram_for(linkage: str):
        return cluster(matrix, linkage)

    @lru_cache(maxsize=1)
    def mca_result():
        return mca(dataset)

    @app.exception_handler(RequestValidationError)
    async def on_validation(request: Request, exc: RequestValidationError):
        return _error(422, "bad_request", str(exc.errors()[:1]))

    @app.exception_handler(UnknownDimensionError)
    async def on_unknown_dimension(request: Request, exc: UnknownDimensionError):
        return _error(422, "unknown_dimension", str(exc))

    @app.exception_handler(UnknownValueError)
    async def on_unknown_value(request: Request, exc: UnknownValueError):
        return _error(422, "unknown_value", str(exc))

    @app.exception_handler(DegenerateInputError)
    async def on_degenerate(request: Request, exc: DegenerateInputError):
        return _error(422, "degenerate_input", str(exc))

    @app.exception_handler(ValueError)
    async def on_value_error(request: Request, exc: ValueError):
        return _error(422, "bad_request", str(exc))

    @app.exception_handler(Exception)
    async def on_internal(request: Request, exc: Exception):
        return _error(500, "internal", "unexpected server error")

    @app.get("/api/dataset/summary")
    def dataset_summary():
        return {
            "n_records": dataset.n_records,
            "n_dimensions": dataset.n_dimensions,
            "dimensions": [
                {"name": dim.name, "domain": list(dim.domain)}
                for dim in dataset.dimensions
            ],
            "frequencies": json.loads(export_summary_json(dataset)),
        }

    @app.post("/api/cluster")
    def api_cluster(req: ClusterRequest):
        dendrogram = dendrogram_for(req.linkage)
        partition = cut(dendrogram, req.k)
        return {
            "dendrogram": json.loads(export_dendrogram(dendrogram, overlay=partition)),
            "newick": to_newick(dendrogram),
            "partition": {
                "k": partition.k,
                "assignments": [
                    {"id": rid, "cluster": c} for rid, c in partition.labels.items()
                ],
            },
        }

    @app.post("/api/validate")
    def api_validate(req: ValidateRequest):
        if req.kmax < req.kmin:
            raise ValueError(f"kmax {req.kmax} below kmin {req.kmin}")
        ks = list(range(req.kmin, req.kmax + 1))
        sweep = silhouette_sweep(matrix, req.linkage, ks)
        dendrogram = dendrogram_for(req.linkage)
        silhouettes = [
            json.loads(
                export_silhouette_json(silhouette(matrix, cut(dendrogram, k)))
            )
            for k in ks
        ]
        stability_ks = req.stability_k if req.stability_k is not None else ks
        stability = [
            json.loads(
                export_stability_json(
                    bootstrap_stability(
                        dataset,
                        k,
                        resamples=req.B,
                        seed=req.seed,
                        linkage=req.linkage,
                        threshold=req.threshold,
                    )
                )
            )
            for k in stability_ks
        ]
        return {
            "sweep": [{"k": k, "asw": asw} for k, asw in sweep],
            "silhouettes": silhouettes,
            "stability": stability,
        }

    @app.get("/api/mca")
    def api_mca(retain_threshold: float = Query(ge=0.0, le=100.0)):
        result = mca_result()
        count, retained = retain_dimensions(
            [pct for _, pct in result.corrected], retain_threshold
        )
        return {
            "inertias": list(result.inertias),
            "scree": scree_rows(result),
            "contributions": contribution_rows(result),
            "retained": {
                "threshold": retain_threshold,
                "count": count,
                "axes": retained,
            },
        }

    @app.post("/api/recommend")
    def api_recommend(req: RecommendRequest):
        return json.loads(export_recommendation_json(recommend(dataset, req.bindings)))

    @app.post("/api/tree/descend")
    def api_descend(req: DescendRequest):
        view = descend(tree, req.path)
        return {
            "path": list(view.path),
            "depth": view.depth,
            "dimension": view.dimension,
            "count": view.count,
            "children": [{"value": v, "count": c} for v, c in view.children],
            "gaps": list(view.gaps),
        }

    return app
