"""Request and response models for the HTTP API."""

from __future__ import annotations

from pydantic import BaseModel, Field


class PheromoneSettings(BaseModel):
    alpha: float = 1.0
    beta: float = 3.0
    rho: float = 0.05
    rho_global: float = 0.02
    rho_negative: float = 0.02
    tau0: float = 0.1
    tau_min: float = 0.01
    q: float = 100.0
    sigma0: float = 0.1


class CostSettings(BaseModel):
    link_cost: float = 2.0
    transit_cost: float = 1.0


class GraphRequest(BaseModel):
    nodes: int = 10
    avg_degree: float = 4.0
    seed: int = 0


class GraphResponse(BaseModel):
    nodes: int
    edge_count: int
    edges: list[tuple[int, int]]
    graph_text: str
    fingerprint: str


class RunRequest(BaseModel):
    nodes: int = 10
    avg_degree: float = 4.0
    graph_text: str | None = None
    seed: int = 0
    rounds: int = Field(default=1000, ge=1)
    src: int = 0
    destinations: list[int] | None = None
    volume: float = 1.0
    ants_positive: int = 1
    ants_negative: int = 1
    ants_exploiter: int = 1
    pheromone: PheromoneSettings = Field(default_factory=PheromoneSettings)
    costs: CostSettings = Field(default_factory=CostSettings)
    link_ttl: int = 50
    gamma: float = 1.5
    evaporation_period: int = 1
    eta_denominator: str = "to-dst"


class DestinationSummary(BaseModel):
    dst: int
    min_hop_length: int | None
    bfs_shortest: int
    match: bool


class Totals(BaseModel):
    dispatched: int
    arrived: int
    dead_end: int
    blocked: int


class CostPoint(BaseModel):
    round: int
    value: float
    unreachable_count: int


class FileBundle(BaseModel):
    """Rendered output files; clients write these verbatim."""

    trace_csv: str
    summary_csv: str
    overlay_snapshot: str
    manifest_json: str


class RunResponse(BaseModel):
    manifest: dict
    summary: list[DestinationSummary]
    totals: Totals
    final_cost: CostPoint
    round1_cost: CostPoint
    overlay_link_count: int
    no_entry_breaches: int
    files: FileBundle


class HealthResponse(BaseModel):
    status: str
    version: str
