"""Round-based simulation driver.

Each round dispatches the configured complement of forward ants (colony
order, then destination, then ant index), completes every forward walk
before any backward walk, then performs the periodic activities: expiring
overlay links and globally evaporating every pheromone entry. A single
seeded generator drives all randomness, so a run is a pure function of its
configuration.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .ants import (
    COLONY_ORDER,
    AntStatus,
    BackwardAnt,
    Colony,
    ForwardAnt,
    backward_walk,
    classify_bad_trail,
    establish_overlay_at_source,
    forward_walk,
)
from .colony import ColonyParams, NodeState, new_states
from .cost import CostParams, CostResult, TrafficDemand, total_cost
from .topology import (
    OverlayNetwork,
    PhysicalNetwork,
    generate_random_network,
)


class ConfigError(ValueError):
    """Rejected simulation configuration."""


ETA_DENOMINATOR_MODES = ("to-dst", "to-src")


@dataclass
class SimConfig:
    """Full experiment description; every run is reproducible from it."""

    nodes: int = 10
    avg_degree: float = 4.0
    graph_text: str | None = None  # canonical graph file content, overrides generation
    seed: int = 0
    rounds: int = 1000
    src: int = 0
    destinations: tuple[int, ...] | None = None  # None: every other node
    volume: float = 1.0
    ants_positive: int = 1
    ants_negative: int = 1
    ants_exploiter: int = 1
    colony: ColonyParams = field(default_factory=ColonyParams)
    cost: CostParams = field(default_factory=CostParams)
    link_ttl: int = 50
    gamma: float = 1.5
    evaporation_period: int = 1
    eta_denominator: str = "to-dst"

    def validate(self) -> None:
        if self.rounds < 1:
            raise ConfigError(f"rounds must be >= 1, got {self.rounds}")
        if self.volume < 0:
            raise ConfigError(f"volume must be nonnegative, got {self.volume}")
        counts = (self.ants_positive, self.ants_negative, self.ants_exploiter)
        if any(c < 0 for c in counts):
            raise ConfigError("colony ant counts must be nonnegative")
        if sum(counts) < 1:
            raise ConfigError("at least one ant per round is required")
        if self.link_ttl < 1:
            raise ConfigError(f"link ttl must be >= 1, got {self.link_ttl}")
        if self.gamma <= 0:
            raise ConfigError(f"gamma must be positive, got {self.gamma}")
        if self.evaporation_period < 1:
            raise ConfigError("evaporation period must be >= 1")
        if self.eta_denominator not in ETA_DENOMINATOR_MODES:
            raise ConfigError(
                f"eta_denominator must be one of {ETA_DENOMINATOR_MODES}"
            )
        if self.destinations is not None:
            if not self.destinations:
                raise ConfigError("destination list cannot be empty")
            if self.src in self.destinations:
                raise ConfigError("src cannot be one of the destinations")
            if len(set(self.destinations)) != len(self.destinations):
                raise ConfigError("duplicate destinations")


@dataclass(frozen=True)
class AntRecord:
    """One row per dispatched ant, filled in after its round completes."""

    round: int
    colony: str
    src: int
    dst: int
    status: str
    hop_count: int
    min_overlay_cost: float | None
    candidate: int | None
    established: bool


@dataclass(frozen=True)
class OverlayEvent:
    round: int
    kind: str  # "create" | "expire"
    owner: int
    endpoint: int
    serves_dst: int
    hop_length: int
    expires_round: int


@dataclass(frozen=True)
class RoundSummary:
    round: int
    dispatched: int
    arrived: int
    dead_end: int
    blocked: int


@dataclass(frozen=True)
class CostSample:
    round: int
    value: float
    unreachable_count: int


@dataclass
class Metrics:
    trace: list[AntRecord] = field(default_factory=list)
    round_summaries: list[RoundSummary] = field(default_factory=list)
    overlay_events: list[OverlayEvent] = field(default_factory=list)
    cost_series: list[CostSample] = field(default_factory=list)
    injected_cost_series: list[CostSample] = field(default_factory=list)
    no_entry_breaches: int = 0

    def arrived_hops(self, dst: int) -> list[tuple[int, int]]:
        """(round, hop_count) for every arrived ant toward dst."""
        return [
            (r.round, r.hop_count)
            for r in self.trace
            if r.dst == dst and r.status == AntStatus.ARRIVED.value
        ]

    def min_hop(self, dst: int) -> int | None:
        hops = [h for _, h in self.arrived_hops(dst)]
        return min(hops) if hops else None


def demand_from_estimates(
    states: list[NodeState], src: int, destinations: tuple[int, ...]
) -> TrafficDemand:
    """Demand over the configured (src, dst) pairs, valued from the estimate
    the owning node currently holds."""
    demand = TrafficDemand()
    for dst in destinations:
        demand.set(src, dst, states[src].get_demand(dst))
    return demand


def demand_from_config(
    src: int, destinations: tuple[int, ...], volume: float
) -> TrafficDemand:
    """Ground-truth injected demand: the configured volume per (src, dst)."""
    demand = TrafficDemand()
    for dst in destinations:
        demand.set(src, dst, volume)
    return demand


def sample_total_cost(
    states: list[NodeState],
    overlay: OverlayNetwork,
    net: PhysicalNetwork,
    src: int,
    destinations: tuple[int, ...],
    params: CostParams,
) -> CostResult:
    """Current overlay cost over the configured demand pairs, using the
    demand estimates held at the nodes."""
    demand = demand_from_estimates(states, src, destinations)
    return total_cost(overlay, net, demand, params)


class Simulation:
    """One seeded run; state is confined to this instance."""

    def __init__(self, config: SimConfig):
        config.validate()
        self.config = config
        if config.graph_text is not None:
            self.net = PhysicalNetwork.from_text(config.graph_text)
        else:
            self.net = generate_random_network(
                config.nodes, config.avg_degree, config.seed
            )
        if not (0 <= config.src < self.net.n):
            raise ConfigError(f"src {config.src} out of range for n={self.net.n}")
        if config.destinations is None:
            self.destinations = tuple(
                d for d in range(self.net.n) if d != config.src
            )
        else:
            for d in config.destinations:
                if not (0 <= d < self.net.n):
                    raise ConfigError(f"destination {d} out of range")
            self.destinations = tuple(sorted(config.destinations))
        self.states = new_states(self.net.n, config.colony)
        self.overlay = OverlayNetwork()
        self.rng = random.Random(config.seed)
        self.metrics = Metrics()
        self.rounds_done = 0

    def run(self) -> Metrics:
        for _ in range(self.config.rounds):
            self.step_round()
        return self.metrics

    def step_round(self) -> None:
        cfg = self.config
        rnd = self.rounds_done + 1
        counts = {
            Colony.POSITIVE: cfg.ants_positive,
            Colony.NEGATIVE: cfg.ants_negative,
            Colony.EXPLOITER: cfg.ants_exploiter,
        }

        forward_batch: list[ForwardAnt] = []
        for colony in COLONY_ORDER:
            for dst in self.destinations:
                for _ in range(counts[colony]):
                    ant = ForwardAnt(colony=colony, src=cfg.src, dst=dst, volume=cfg.volume)
                    forward_walk(ant, self.states, self.overlay, self.net, cfg.colony, self.rng)
                    if colony is Colony.EXPLOITER:
                        self._audit_no_entry(ant)
                    forward_batch.append(ant)

        results: list[tuple[ForwardAnt, BackwardAnt | None, bool]] = []
        for ant in forward_batch:
            if ant.status is not AntStatus.ARRIVED:
                results.append((ant, None, False))
                continue
            bad = classify_bad_trail(ant, self.states, cfg.gamma)
            bant = BackwardAnt(origin=ant, is_bad=bad)
            backward_walk(
                bant, self.states, self.net, cfg.colony, cfg.cost, cfg.eta_denominator
            )
            link = establish_overlay_at_source(
                bant, self.overlay, self.net, now=rnd, ttl=cfg.link_ttl
            )
            if link is not None:
                self.metrics.overlay_events.append(
                    OverlayEvent(
                        rnd, "create", link.owner, link.endpoint,
                        link.serves_dst, link.hop_length, link.expires_round,
                    )
                )
            results.append((ant, bant, link is not None))

        dead_end = blocked = arrived = 0
        for ant, bant, established in results:
            if ant.status is AntStatus.ARRIVED:
                arrived += 1
            elif ant.status is AntStatus.DEAD_END:
                dead_end += 1
            else:
                blocked += 1
            self.metrics.trace.append(
                AntRecord(
                    round=rnd,
                    colony=ant.colony.value,
                    src=ant.src,
                    dst=ant.dst,
                    status=ant.status.value,
                    hop_count=ant.hop_count,
                    min_overlay_cost=(
                        bant.min_overlay_cost
                        if bant is not None and math.isfinite(bant.min_overlay_cost)
                        else None
                    ),
                    candidate=bant.candidate if bant is not None else None,
                    established=established,
                )
            )
        self.metrics.round_summaries.append(
            RoundSummary(rnd, len(results), arrived, dead_end, blocked)
        )

        if rnd % cfg.evaporation_period == 0:
            for link in self.overlay.expire(rnd):
                self.metrics.overlay_events.append(
                    OverlayEvent(
                        rnd, "expire", link.owner, link.endpoint,
                        link.serves_dst, link.hop_length, link.expires_round,
                    )
                )
            bound = cfg.colony.tau0
            for state in self.states:
                state.evaporate_all(cfg.colony)
                for value in state.tau.values():
                    if not -bound <= value <= bound:
                        raise RuntimeError(
                            f"pheromone {value} escaped [-{bound}, {bound}]"
                        )

        sample = sample_total_cost(
            self.states, self.overlay, self.net, cfg.src, self.destinations, cfg.cost
        )
        self.metrics.cost_series.append(
            CostSample(rnd, sample.value, len(sample.unreachable_pairs))
        )
        injected = total_cost(
            self.overlay,
            self.net,
            demand_from_config(cfg.src, self.destinations, cfg.volume),
            cfg.cost,
        )
        self.metrics.injected_cost_series.append(
            CostSample(rnd, injected.value, len(injected.unreachable_pairs))
        )
        self.rounds_done = rnd

    def _audit_no_entry(self, ant: ForwardAnt) -> None:
        """Replay an exploiter walk and count physical steps below tau_min.

        Runs inside the forward phase: pheromone and overlay are untouched
        since the walk, so the values read here are the ones the selection
        saw. Overlay shortcuts are mandatory moves and are not audited.
        """
        tau_min = self.config.colony.tau_min
        prev = ant.src
        for nxt in ant.path:
            link = self.overlay.get(prev, ant.dst)
            took_shortcut = link is not None and link.endpoint == nxt
            if not took_shortcut and self.states[prev].get_tau(nxt, ant.dst) < tau_min:
                self.metrics.no_entry_breaches += 1
            prev = nxt


def run(config: SimConfig) -> Metrics:
    """Execute a full run; convenience wrapper over Simulation."""
    return Simulation(config).run()
