"""Per-node adaptive state and its update rules.

Every rule is a pure function; NodeState is a plain container the walks
mutate. Pheromone entries live per (outgoing neighbor, destination) and are
materialized at first read so the periodic global evaporation reaches them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class ColonyParams:
    """Pheromone and estimator parameters shared by all three colonies."""

    alpha: float = 1.0          # pheromone exponent in the transition rule
    beta: float = 3.0           # desirability exponent in the transition rule
    rho: float = 0.05           # local evaporation / EMA rate
    rho_global: float = 0.02    # periodic global evaporation rate
    rho_negative: float = 0.02  # repellent-marking evaporation rate
    tau0: float = 0.1           # initial pheromone level
    tau_min: float = 0.01       # no-entry threshold for exploiting ants
    q: float = 100.0            # overlay-value scaling constant
    sigma0: float = 0.1         # overlay-value floor and initial value

    def __post_init__(self):
        for name in ("rho", "rho_global", "rho_negative"):
            r = getattr(self, name)
            if not 0.0 < r < 1.0:
                raise ValueError(f"{name} must lie in (0, 1), got {r}")
        if self.tau0 <= 0:
            raise ValueError(f"tau0 must be positive, got {self.tau0}")
        # tau_min may be <= 0: that disables the no-entry filter entirely,
        # which the single-colony regression mode relies on.
        if self.tau_min >= self.tau0:
            raise ValueError("tau_min must be below tau0")
        if self.q <= 0:
            raise ValueError(f"q must be positive, got {self.q}")
        if self.sigma0 <= 0:
            raise ValueError(f"sigma0 must be positive, got {self.sigma0}")


def local_positive_update(tau: float, params: ColonyParams) -> float:
    """Reinforce an edge walked by a returning ant, pulling toward tau0."""
    return (1.0 - params.rho) * tau + params.rho * params.tau0


def negative_update(tau: float, params: ColonyParams) -> float:
    """Repellent marking: the evaporated value, sign-flipped."""
    return -((1.0 - params.rho_negative) * tau + params.rho_negative * params.tau0)


def global_evaporate(tau: float, params: ColonyParams) -> float:
    """Periodic decay applied to every pheromone entry."""
    return (1.0 - params.rho_global) * tau


def update_demand(d: float, volume: float, params: ColonyParams) -> float:
    """Exponential moving average of the traffic volume seen at a node."""
    if volume < 0:
        raise ValueError(f"volume must be nonnegative, got {volume}")
    return (1.0 - params.rho) * d + params.rho * volume


def update_hops_from(current_est: float, hop_count: int) -> int:
    """Best observed hop count from a source; infinity is the identity."""
    if hop_count < 0:
        raise ValueError(f"hop count must be nonnegative, got {hop_count}")
    return hop_count if hop_count < current_est else int(current_est)


def update_eta(current_eta: float, denominator: int) -> float:
    """Desirability max-update with 1/denominator; denominator 0 is a no-op."""
    if denominator < 1:
        return current_eta
    return max(current_eta, 1.0 / denominator)


def update_sigma(sigma: float, cost: float, params: ColonyParams) -> float:
    """Overlay-anchoring value: EMA toward q/cost, floored at sigma0."""
    if cost <= 0:
        raise ValueError(f"overlay cost must be positive, got {cost}")
    return max(params.sigma0, (1.0 - params.rho) * sigma + params.rho * params.q / cost)


def update_hops_to(hop_count: int, hops_from_src: int) -> int:
    """Remaining hops to the destination, from the completed walk length."""
    remaining = hop_count - hops_from_src
    if remaining < 0:
        raise RuntimeError(
            f"hops-from estimate {hops_from_src} exceeds walk length {hop_count}; "
            "node state is corrupt"
        )
    return remaining


class NodeState:
    """Mutable routing state of one node.

    tau maps (neighbor, destination) to the pheromone on that outgoing arc;
    neighbors may be physical or overlay endpoints. Entries default to tau0
    and are stored on first read.
    """

    __slots__ = ("tau", "eta", "sigma", "demand_est", "hops_from", "hops_to", "_tau0")

    def __init__(self, params: ColonyParams):
        self.tau: dict[tuple[int, int], float] = {}
        self.eta: dict[int, float] = {}
        self.sigma: float = params.sigma0
        self.demand_est: dict[int, float] = {}
        self.hops_from: dict[int, float] = {}
        self.hops_to: dict[int, float] = {}
        self._tau0 = params.tau0

    def get_tau(self, neighbor: int, dst: int) -> float:
        return self.tau.setdefault((neighbor, dst), self._tau0)

    def set_tau(self, neighbor: int, dst: int, value: float) -> None:
        self.tau[(neighbor, dst)] = value

    def get_eta(self, dst: int) -> float:
        return self.eta.get(dst, 0.0)

    def get_demand(self, dst: int) -> float:
        return self.demand_est.get(dst, 0.0)

    def get_hops_from(self, src: int) -> float:
        return self.hops_from.get(src, math.inf)

    def evaporate_all(self, params: ColonyParams) -> None:
        for key, value in self.tau.items():
            self.tau[key] = global_evaporate(value, params)


def new_states(n: int, params: ColonyParams) -> list[NodeState]:
    return [NodeState(params) for _ in range(n)]


def format_state_snapshot(states: list[NodeState]) -> str:
    """Debug dump: per node, tau/eta/sigma/d/hops_from lines, 9 sig digits."""
    out: list[str] = []
    for node, st in enumerate(states):
        out.append(f"node {node}")
        for (neighbor, dst) in sorted(st.tau):
            out.append(f"tau {neighbor} {dst} {st.tau[(neighbor, dst)]:.9g}")
        for dst in sorted(st.eta):
            out.append(f"eta {dst} {st.eta[dst]:.9g}")
        out.append(f"sigma {st.sigma:.9g}")
        for dst in sorted(st.demand_est):
            out.append(f"d {dst} {st.demand_est[dst]:.9g}")
        for src in sorted(st.hops_from):
            out.append(f"hops_from {src} {st.hops_from[src]:.9g}")
    return "\n".join(out) + "\n"
