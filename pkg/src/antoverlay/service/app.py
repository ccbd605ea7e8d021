"""FastAPI wrapper around the simulator.

The endpoints stay thin: `execute_run` does the work and is also what the
CLI calls when no remote server is configured, so both clients see the same
bytes for the same request.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..colony import ColonyParams
from ..cost import CostParams
from ..engine import ConfigError, SimConfig, Simulation
from ..reports import (
    build_manifest,
    render_manifest,
    render_overlay_snapshot,
    render_summary_csv,
    render_trace_csv,
    summary_rows,
    totals,
)
from ..topology import GraphError, generate_random_network
from .schemas import (
    CostPoint,
    FileBundle,
    GraphRequest,
    GraphResponse,
    HealthResponse,
    RunRequest,
    RunResponse,
)


def config_from_request(req: RunRequest) -> SimConfig:
    return SimConfig(
        nodes=req.nodes,
        avg_degree=req.avg_degree,
        graph_text=req.graph_text,
        seed=req.seed,
        rounds=req.rounds,
        src=req.src,
        destinations=tuple(req.destinations) if req.destinations is not None else None,
        volume=req.volume,
        ants_positive=req.ants_positive,
        ants_negative=req.ants_negative,
        ants_exploiter=req.ants_exploiter,
        colony=ColonyParams(**req.pheromone.model_dump()),
        cost=CostParams(**req.costs.model_dump()),
        link_ttl=req.link_ttl,
        gamma=req.gamma,
        evaporation_period=req.evaporation_period,
        eta_denominator=req.eta_denominator,
    )


def execute_run(req: RunRequest) -> RunResponse:
    """Validate, simulate, and render every output artifact."""
    config = config_from_request(req)
    sim = Simulation(config)
    metrics = sim.run()

    manifest = build_manifest(config, sim.net)
    final = metrics.cost_series[-1]
    first = metrics.cost_series[0]
    files = FileBundle(
        trace_csv=render_trace_csv(metrics),
        summary_csv=render_summary_csv(metrics, sim.net, config.src, sim.destinations),
        overlay_snapshot=render_overlay_snapshot(
            sim, _final_cost_result(sim)
        ),
        manifest_json=render_manifest(manifest),
    )
    return RunResponse(
        manifest=manifest,
        summary=summary_rows(metrics, sim.net, config.src, sim.destinations),
        totals=totals(metrics),
        final_cost=CostPoint(
            round=final.round, value=final.value, unreachable_count=final.unreachable_count
        ),
        round1_cost=CostPoint(
            round=first.round, value=first.value, unreachable_count=first.unreachable_count
        ),
        overlay_link_count=len(sim.overlay),
        no_entry_breaches=metrics.no_entry_breaches,
        files=files,
    )


def _final_cost_result(sim: Simulation):
    from ..engine import sample_total_cost

    return sample_total_cost(
        sim.states, sim.overlay, sim.net, sim.config.src, sim.destinations,
        sim.config.cost,
    )


def generate_graph(req: GraphRequest) -> GraphResponse:
    net = generate_random_network(req.nodes, req.avg_degree, req.seed)
    return GraphResponse(
        nodes=net.n,
        edge_count=len(net.edges),
        edges=net.sorted_edges(),
        graph_text=net.to_text(),
        fingerprint=net.fingerprint(),
    )


def create_app() -> FastAPI:
    app = FastAPI(
        title="antoverlay",
        version=__version__,
        description="Ant-colony shortest-path routing with low-cost overlay construction",
    )

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/graphs/generate", response_model=GraphResponse)
    def graphs_generate(req: GraphRequest) -> GraphResponse:
        try:
            return generate_graph(req)
        except GraphError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    @app.post("/runs", response_model=RunResponse)
    def runs(req: RunRequest) -> RunResponse:
        try:
            return execute_run(req)
        except (ConfigError, GraphError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    return app


app = create_app()
