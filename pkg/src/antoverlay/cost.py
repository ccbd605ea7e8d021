"""Biobjective overlay cost model.

A node pays for the logical links it owns (per physical hop) and for
carrying its traffic demand across virtual links. Unreachable demand is
reported as a flag, never folded into the numeric sum.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .topology import OverlayNetwork, PhysicalNetwork, transit_counts_from


@dataclass(frozen=True)
class CostParams:
    """Coefficients of the two cost components."""

    link_cost: float = 2.0     # per physical hop of an owned logical link
    transit_cost: float = 1.0  # per virtual transit link per unit demand

    def __post_init__(self):
        if self.link_cost < 0 or self.transit_cost < 0:
            raise ValueError("cost coefficients must be nonnegative")


class TrafficDemand:
    """Per-node demand toward a destination subset.

    Pairs (i, j) with i == j are rejected; absence of a pair means node i has
    no demand toward j.
    """

    def __init__(self, demands: dict[tuple[int, int], float] | None = None):
        self._demands: dict[tuple[int, int], float] = {}
        if demands:
            for (i, j), d in demands.items():
                self.set(i, j, d)

    def set(self, i: int, j: int, d: float) -> None:
        if i == j:
            raise ValueError(f"node {i} cannot demand traffic toward itself")
        if d < 0:
            raise ValueError(f"negative demand {d} for pair ({i}, {j})")
        self._demands[(i, j)] = d

    def get(self, i: int, j: int) -> float:
        return self._demands.get((i, j), 0.0)

    def destinations_of(self, i: int) -> list[int]:
        return sorted(j for (a, j) in self._demands if a == i)

    def pairs(self) -> list[tuple[int, int]]:
        return sorted(self._demands)

    def to_text(self) -> str:
        return "".join(f"{i} {j} {self._demands[(i, j)]!r}\n" for i, j in self.pairs())

    @classmethod
    def from_text(cls, text: str) -> "TrafficDemand":
        demand = cls()
        for ln in text.splitlines():
            ln = ln.strip()
            if not ln or ln.startswith("#"):
                continue
            parts = ln.split()
            if len(parts) != 3:
                raise ValueError(f"bad demand line {ln!r}, expected 'i j d'")
            demand.set(int(parts[0]), int(parts[1]), float(parts[2]))
        return demand


@dataclass(frozen=True)
class CostResult:
    """Cost value plus the demand pairs that had no route."""

    value: float
    unreachable_pairs: tuple[tuple[int, int], ...] = field(default=())

    @property
    def finite(self) -> bool:
        return not self.unreachable_pairs


def node_cost(
    i: int,
    overlay: OverlayNetwork,
    net: PhysicalNetwork,
    demand: TrafficDemand,
    params: CostParams,
) -> CostResult:
    """Cost for node i: owned-link hops plus demand-weighted transit counts."""
    total = 0.0
    for link in overlay.owned_by(i):
        total += params.link_cost * link.hop_length
    unreachable = []
    dsts = demand.destinations_of(i)
    if dsts:
        transit = transit_counts_from(overlay, net, i)
        for j in dsts:
            if transit[j] < 0:
                unreachable.append((i, j))
            else:
                total += params.transit_cost * transit[j] * demand.get(i, j)
    return CostResult(value=total, unreachable_pairs=tuple(unreachable))


def total_cost(
    overlay: OverlayNetwork,
    net: PhysicalNetwork,
    demand: TrafficDemand,
    params: CostParams,
) -> CostResult:
    """Sum of node costs over all nodes, unreachable flags propagated."""
    value = 0.0
    unreachable: list[tuple[int, int]] = []
    for i in range(net.n):
        part = node_cost(i, overlay, net, demand, params)
        value += part.value
        unreachable.extend(part.unreachable_pairs)
    return CostResult(value=value, unreachable_pairs=tuple(unreachable))


def ant_overlay_cost(
    hops_to_src: int, demand_estimate: float, hops_to_dst: int, params: CostParams
) -> float:
    """Cost of anchoring an overlay link at a node in mid-path.

    Combines the distance back to the source (link setup) with the demand
    still to be carried forward to the destination.
    """
    if hops_to_src < 0 or hops_to_dst < 0 or demand_estimate < 0:
        raise ValueError("hop counts and demand estimate must be nonnegative")
    return (
        params.link_cost * hops_to_src
        + params.transit_cost * demand_estimate * hops_to_dst
    )
