"""Experiment harness CLI.

A thin client over the service layer: `run` builds the same request the
HTTP API accepts, executes it in process (or against a remote server via
--server), and writes the returned artifacts verbatim. `serve` exposes the
API over HTTP; `generate-graph` emits a substrate graph file.
"""

from __future__ import annotations

import json
from pathlib import Path

import click
import httpx

from . import __version__
from .service.app import execute_run, generate_graph
from .service.schemas import GraphRequest, RunRequest, RunResponse

REFERENCE_PRESET = {
    "nodes": 10,
    "avg_degree": 4.0,
    "rounds": 1000,
    "volume": 1.0,
    "alpha": 1.0,
    "beta": 3.0,
    "rho": 0.05,
    "rho_global": 0.02,
    "rho_negative": 0.02,
    "tau0": 0.1,
    "tau_min": 0.01,
    "q": 100.0,
    "sigma0": 0.1,
    "link_cost": 2.0,
    "transit_cost": 1.0,
}

OUTPUT_FILES = {
    "trace_csv": "trace.csv",
    "summary_csv": "summary.csv",
    "overlay_snapshot": "overlay.txt",
    "manifest_json": "manifest.json",
}


@click.group()
@click.version_option(version=__version__)
def cli():
    """Ant-colony overlay routing simulator."""


@cli.command("run")
@click.option("--nodes", type=int, default=10, show_default=True, help="Node count for graph generation.")
@click.option("--avg-degree", type=float, default=4.0, show_default=True, help="Average node degree for graph generation.")
@click.option("--graph", "graph_file", type=click.Path(), default=None, help="Load the substrate from a graph file instead of generating one.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--rounds", type=int, default=1000, show_default=True)
@click.option("--src", type=int, default=0, show_default=True)
@click.option("--dsts", default=None, help="Comma-separated destination ids (default: all other nodes).")
@click.option("--volume", type=float, default=1.0, show_default=True, help="Traffic volume carried by each forward ant.")
@click.option("--ants-positive", type=int, default=1, show_default=True)
@click.option("--ants-negative", type=int, default=1, show_default=True)
@click.option("--ants-exploiter", type=int, default=1, show_default=True)
@click.option("--alpha", type=float, default=1.0, show_default=True)
@click.option("--beta", type=float, default=3.0, show_default=True)
@click.option("--rho", type=float, default=0.05, show_default=True)
@click.option("--rho-global", type=float, default=0.02, show_default=True)
@click.option("--rho-negative", type=float, default=0.02, show_default=True)
@click.option("--tau0", type=float, default=0.1, show_default=True)
@click.option("--tau-min", type=float, default=0.01, show_default=True)
@click.option("--q", type=float, default=100.0, show_default=True)
@click.option("--sigma0", type=float, default=0.1, show_default=True)
@click.option("--link-cost", type=float, default=2.0, show_default=True)
@click.option("--transit-cost", type=float, default=1.0, show_default=True)
@click.option("--ttl", type=int, default=50, show_default=True, help="Overlay link lifetime in rounds.")
@click.option("--gamma", type=float, default=1.5, show_default=True, help="Bad-trail factor over the best known hop count.")
@click.option("--evaporation-period", type=int, default=1, show_default=True)
@click.option("--eta-denominator", type=click.Choice(["to-dst", "to-src"]), default="to-dst", show_default=True)
@click.option("--paper-defaults", is_flag=True, help="Apply the published reference parameterization (10 nodes, degree 4, 1000 rounds); explicit flags still win.")
@click.option("--manifest", "manifest_file", type=click.Path(), default=None, help="Re-run the exact configuration of a previous manifest.")
@click.option("--out", "out_dir", type=click.Path(), default="out", show_default=True, help="Directory for the output files.")
@click.option("--server", default=None, help="Base URL of a running service; without it the run executes in process.")
@click.pass_context
def run_cmd(ctx, **opts):
    """Execute one simulation and write its artifacts."""
    if opts["manifest_file"] is not None:
        request = _request_from_manifest(opts["manifest_file"])
    else:
        request = _request_from_flags(ctx, opts)
    response = _execute(request, opts["server"])
    out_dir = Path(opts["out_dir"])
    out_dir.mkdir(parents=True, exist_ok=True)
    files = response.files.model_dump()
    for key, name in OUTPUT_FILES.items():
        (out_dir / name).write_bytes(files[key].encode("utf-8"))
    _print_summary(response, out_dir)


def _request_from_flags(ctx, opts) -> RunRequest:
    values = dict(opts)
    if values.pop("paper_defaults"):
        # Reset anything the user did not set explicitly to the reference
        # experiment value, so the preset survives future default changes.
        for name, preset in REFERENCE_PRESET.items():
            source = ctx.get_parameter_source(name)
            if source is None or source.name != "COMMANDLINE":
                values[name] = preset
    graph_text = None
    graph_file = values.pop("graph_file")
    if graph_file is not None:
        path = Path(graph_file)
        if not path.is_file():
            raise click.ClickException(f"graph file not found: {path}")
        graph_text = path.read_text()
    destinations = None
    if values["dsts"] is not None:
        try:
            destinations = [int(part) for part in str(values["dsts"]).split(",") if part.strip()]
        except ValueError:
            raise click.ClickException(f"bad --dsts value: {values['dsts']!r}") from None
        if not destinations:
            raise click.ClickException("empty --dsts value")
    return RunRequest(
        nodes=values["nodes"],
        avg_degree=values["avg_degree"],
        graph_text=graph_text,
        seed=values["seed"],
        rounds=values["rounds"],
        src=values["src"],
        destinations=destinations,
        volume=values["volume"],
        ants_positive=values["ants_positive"],
        ants_negative=values["ants_negative"],
        ants_exploiter=values["ants_exploiter"],
        pheromone={
            "alpha": values["alpha"],
            "beta": values["beta"],
            "rho": values["rho"],
            "rho_global": values["rho_global"],
            "rho_negative": values["rho_negative"],
            "tau0": values["tau0"],
            "tau_min": values["tau_min"],
            "q": values["q"],
            "sigma0": values["sigma0"],
        },
        costs={
            "link_cost": values["link_cost"],
            "transit_cost": values["transit_cost"],
        },
        link_ttl=values["ttl"],
        gamma=values["gamma"],
        evaporation_period=values["evaporation_period"],
        eta_denominator=values["eta_denominator"],
    )


def _request_from_manifest(manifest_file: str) -> RunRequest:
    path = Path(manifest_file)
    if not path.is_file():
        raise click.ClickException(f"manifest file not found: {path}")
    try:
        manifest = json.loads(path.read_text())
        cfg = manifest["config"]
    except (json.JSONDecodeError, KeyError) as exc:
        raise click.ClickException(f"unreadable manifest {path}: {exc}") from exc
    return RunRequest(
        nodes=cfg["nodes"],
        avg_degree=cfg["avg_degree"],
        graph_text=cfg["graph_text"],
        seed=cfg["seed"],
        rounds=cfg["rounds"],
        src=cfg["src"],
        destinations=cfg["destinations"],
        volume=cfg["volume"],
        ants_positive=cfg["ants_positive"],
        ants_negative=cfg["ants_negative"],
        ants_exploiter=cfg["ants_exploiter"],
        pheromone=cfg["colony"],
        costs=cfg["cost"],
        link_ttl=cfg["link_ttl"],
        gamma=cfg["gamma"],
        evaporation_period=cfg["evaporation_period"],
        eta_denominator=cfg["eta_denominator"],
    )


def _execute(request: RunRequest, server: str | None) -> RunResponse:
    if server is None:
        try:
            return execute_run(request)
        except ValueError as exc:
            raise click.ClickException(str(exc)) from exc
    resp = httpx.post(
        server.rstrip("/") + "/runs", json=request.model_dump(), timeout=600.0
    )
    if resp.status_code != 200:
        raise click.ClickException(f"server rejected the run: {resp.status_code} {resp.text}")
    return RunResponse.model_validate(resp.json())


def _print_summary(response: RunResponse, out_dir: Path) -> None:
    t = response.totals
    click.echo(f"rounds done, ants: {t.dispatched} dispatched / {t.arrived} arrived / "
               f"{t.dead_end} dead-end / {t.blocked} blocked")
    for row in response.summary:
        best = "-" if row.min_hop_length is None else row.min_hop_length
        flag = "ok" if row.match else "off"
        click.echo(f"  dst {row.dst}: min hops {best}, shortest {row.bfs_shortest} [{flag}]")
    click.echo(f"overlay links: {response.overlay_link_count}, "
               f"cost round1 {response.round1_cost.value:.9g} -> final {response.final_cost.value:.9g}")
    click.echo(f"wrote {', '.join(sorted(OUTPUT_FILES.values()))} to {out_dir}")


@cli.command("generate-graph")
@click.option("--nodes", type=int, default=10, show_default=True)
@click.option("--avg-degree", type=float, default=4.0, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", "out_file", type=click.Path(), default=None, help="Write the graph file here (default: stdout).")
def generate_graph_cmd(nodes, avg_degree, seed, out_file):
    """Generate a seeded random connected graph file."""
    try:
        response = generate_graph(GraphRequest(nodes=nodes, avg_degree=avg_degree, seed=seed))
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc
    if out_file is None:
        click.echo(response.graph_text, nl=False)
    else:
        Path(out_file).write_bytes(response.graph_text.encode("utf-8"))
        click.echo(f"wrote {response.edge_count} edges to {out_file} "
                   f"(fingerprint {response.fingerprint[:12]})")


@cli.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve_cmd(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("antoverlay.service.app:app", host=host, port=port)


def main(argv=None):
    """Console entry point; returns the process exit status."""
    try:
        rv = cli.main(args=argv, standalone_mode=False)
        return 0 if rv is None else rv
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Abort:
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
