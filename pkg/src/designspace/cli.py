"""Command-line frontend: load a categorical corpus, run one analysis,
write the artifacts.

Thin client over the library: every file written here is a library
export plus a provenance header, and ``serve`` just hands the dataset to
the HTTP facade.  Exit codes: 0 success, 1 bad data or I/O, 2 usage.
"""

from __future__ import annotations

import signal
import socket
import sys
from pathlib import Path

import click

from . import __version__
from .dataset import Dataset, read_dataset
from .gower import distance_matrix
from .hac import (
    LINKAGES,
    cluster,
    cut,
    export_dendrogram,
    export_partition_csv,
    to_newick,
)
from .mca import export_contributions_csv, export_scree_csv, mca, retain_dimensions
from .recommender import export_recommendation_json, recommend
from .validation import (
    bootstrap_stability,
    export_stability_json,
    export_sweep_csv,
    silhouette_sweep,
)


def _load(path: Path, delimiter: str) -> Dataset:
    try:
        return read_dataset(path, delimiter=delimiter)
    except OSError as exc:
        raise click.ClickException(f"cannot read {path}: {exc.strerror or exc}") from exc
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc


def _build_meta(command: str, input_path: Path, params: dict) -> dict:
    """Provenance header for written artifacts; no timestamps, so repeated
    runs with the same parameters produce byte-identical files."""
    return {
        "tool": "designspace",
        "version": __version__,
        "command": command,
        "input": input_path.name,
        "parameters": params,
    }


def _write(out_dir: Path, name: str, text: str) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / name
    path.write_text(text, encoding="utf-8")
    click.echo(f"wrote {path}")


def _io_options(f):
    f = click.option(
        "--out",
        "out_dir",
        type=click.Path(file_okay=False, path_type=Path),
        default=Path("."),
        envvar="DESIGNSPACE_OUT",
        show_default=True,
        help="Directory for written artifacts.",
    )(f)
    f = click.option(
        "--delimiter",
        default=",",
        show_default=True,
        help="Field delimiter of the input file.",
    )(f)
    f = click.argument(
        "input_path",
        metavar="INPUT",
        type=click.Path(dir_okay=False, path_type=Path),
    )(f)
    return f


@click.group()
@click.version_option(__version__, prog_name="designspace")
def main():
    """Design-space mining over categorical corpora: cluster, validate,
    project, recommend, serve."""


@main.command("cluster")
@_io_options
@click.option(
    "--k",
    type=click.IntRange(min=1),
    required=True,
    help="Cluster count for the reported partition.",
)
@click.option(
    "--linkage", type=click.Choice(LINKAGES), default="average", show_default=True
)
def cmd_cluster(input_path: Path, delimiter: str, out_dir: Path, k: int, linkage: str):
    """Cluster the corpus; write dendrogram JSON/Newick and a partition CSV."""
    dataset = _load(input_path, delimiter)
    try:
        dendrogram = cluster(distance_matrix(dataset), linkage)
        partition = cut(dendrogram, k)
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc
    meta = _build_meta(
        "cluster", input_path, {"k": k, "linkage": linkage, "delimiter": delimiter}
    )
    _write(
        out_dir,
        "dendrogram.json",
        export_dendrogram(dendrogram, overlay=partition, meta=meta),
    )
    _write(out_dir, "dendrogram.newick", to_newick(dendrogram) + "\n")
    _write(out_dir, "partition.csv", export_partition_csv(partition, meta=meta))


@main.command("validate")
@_io_options
@click.option("--kmin", type=click.IntRange(min=2), default=2, show_default=True)
@click.option("--kmax", type=click.IntRange(min=2), default=10, show_default=True)
@click.option(
    "--resamples",
    "-B",
    "resamples",
    type=click.IntRange(min=1),
    default=100,
    show_default=True,
    help="Bootstrap replicates per k.",
)
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option(
    "--threshold",
    type=click.FloatRange(0, 1, min_open=True, max_open=True),
    default=0.5,
    show_default=True,
    help="Jaccard level below which a cluster counts as dissolved.",
)
@click.option(
    "--linkage", type=click.Choice(LINKAGES), default="average", show_default=True
)
@click.option(
    "--stability-k",
    "stability_ks",
    type=int,
    multiple=True,
    help="Bootstrap only these k (default: every k in the sweep).",
)
def cmd_validate(
    input_path: Path,
    delimiter: str,
    out_dir: Path,
    kmin: int,
    kmax: int,
    resamples: int,
    seed: int,
    threshold: float,
    linkage: str,
    stability_ks: tuple[int, ...],
):
    """Silhouette sweep plus bootstrap stability for candidate cluster counts."""
    if kmax < kmin:
        raise click.BadParameter(f"kmax {kmax} below kmin {kmin}", param_hint="--kmax")
    dataset = _load(input_path, delimiter)
    # The sweep upper end is advisory; a small corpus caps it at N.
    ks = list(range(kmin, min(kmax, dataset.n_records) + 1))
    meta = _build_meta(
        "validate",
        input_path,
        {
            "kmin": kmin,
            "kmax": kmax,
            "resamples": resamples,
            "seed": seed,
            "threshold": threshold,
            "linkage": linkage,
            "delimiter": delimiter,
        },
    )
    try:
        sweep = silhouette_sweep(distance_matrix(dataset), linkage, ks)
        _write(out_dir, "silhouette_sweep.csv", export_sweep_csv(sweep, meta=meta))
        for k in stability_ks or ks:
            report = bootstrap_stability(
                dataset,
                k,
                resamples=resamples,
                seed=seed,
                linkage=linkage,
                threshold=threshold,
            )
            _write(
                out_dir, f"stability_k{k}.json", export_stability_json(report, meta=meta)
            )
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc


@main.command("mca")
@_io_options
@click.option(
    "--retain-threshold",
    type=click.FloatRange(0, 100),
    default=7.0,
    show_default=True,
    help="Variance percentage an axis must exceed to be retained.",
)
def cmd_mca(input_path: Path, delimiter: str, out_dir: Path, retain_threshold: float):
    """Correspondence analysis; write scree and contribution tables."""
    dataset = _load(input_path, delimiter)
    try:
        result = mca(dataset)
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc
    count, axes = retain_dimensions(
        [pct for _, pct in result.corrected], retain_threshold
    )
    meta = _build_meta(
        "mca",
        input_path,
        {"retain_threshold": retain_threshold, "delimiter": delimiter},
    )
    meta["retained"] = {"count": count, "axes": axes}
    _write(out_dir, "scree.csv", export_scree_csv(result, meta=meta))
    _write(out_dir, "contributions.csv", export_contributions_csv(result, meta=meta))


@main.command("recommend")
@_io_options
@click.option(
    "--set",
    "assignments",
    metavar="DIM=VALUE",
    multiple=True,
    help="Bind a dimension to a value; repeatable.",
)
def cmd_recommend(
    input_path: Path, delimiter: str, out_dir: Path, assignments: tuple[str, ...]
):
    """Evidence-backed recommendations for a partial design."""
    bindings: dict[str, str] = {}
    for raw in assignments:
        name, sep, value = raw.partition("=")
        if not sep or not name:
            raise click.BadParameter(f"expected DIM=VALUE, got {raw!r}", param_hint="--set")
        if name in bindings:
            raise click.BadParameter(f"dimension {name!r} bound twice", param_hint="--set")
        bindings[name] = value
    dataset = _load(input_path, delimiter)
    try:
        rec = recommend(dataset, bindings)
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc
    meta = _build_meta(
        "recommend", input_path, {"bindings": bindings, "delimiter": delimiter}
    )
    _write(out_dir, "recommendation.json", export_recommendation_json(rec, meta=meta))


@main.command("serve")
@click.argument(
    "input_path", metavar="INPUT", type=click.Path(dir_okay=False, path_type=Path)
)
@click.option("--delimiter", default=",", show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option(
    "--port",
    type=click.IntRange(0, 65535),
    default=8000,
    show_default=True,
    help="TCP port; 0 picks a free one.",
)
@click.option(
    "--cors",
    "cors_origins",
    metavar="ORIGIN",
    multiple=True,
    help="Allowed CORS origin; repeatable.",
)
@click.option(
    "--order",
    "tree_order",
    metavar="DIM",
    multiple=True,
    help="Navigation-tree dimension order; repeatable (default: column order).",
)
def cmd_serve(
    input_path: Path,
    delimiter: str,
    host: str,
    port: int,
    cors_origins: tuple[str, ...],
    tree_order: tuple[str, ...],
):
    """Run the HTTP facade over the corpus."""
    import uvicorn

    from .service import create_app

    dataset = _load(input_path, delimiter)
    try:
        app = create_app(
            dataset,
            cors_origins=list(cors_origins) or None,
            tree_order=list(tree_order) or None,
        )
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc

    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        sock.bind((host, port))
    except OSError as exc:
        sock.close()
        raise click.ClickException(f"cannot bind {host}:{port}: {exc.strerror or exc}")
    # Listen before announcing the port so clients reacting to the printed
    # line can connect (queued) while the server finishes starting.
    sock.listen(128)
    click.echo(f"serving on http://{host}:{sock.getsockname()[1]}")
    sys.stdout.flush()
    # uvicorn re-raises a captured SIGTERM once its graceful shutdown is done;
    # receive it as the conventional clean exit instead of dying by signal.
    signal.signal(signal.SIGTERM, lambda signum, frame: sys.exit(0))
    uvicorn.Server(uvicorn.Config(app, log_level="warning")).run(sockets=[sock])
