"""Forward and backward ant behaviour for the three colonies.

Positive explorers and negative explorers roam and reinforce; the negative
colony additionally marks excessively long trails with repellent pheromone.
Exploiting ants respect the no-entry threshold and never step onto an arc
whose pheromone toward their destination has fallen below tau_min.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from enum import Enum

from . import colony as rules
from .colony import ColonyParams, NodeState
from .cost import CostParams, ant_overlay_cost
from .topology import LogicalLink, NodeId, OverlayNetwork, PhysicalNetwork


class Colony(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    EXPLOITER = "exploiter"


COLONY_ORDER = (Colony.POSITIVE, Colony.NEGATIVE, Colony.EXPLOITER)


class AntStatus(str, Enum):
    ALIVE = "alive"
    ARRIVED = "arrived"
    DEAD_END = "dead_end"
    BLOCKED = "blocked"


@dataclass
class ForwardAnt:
    colony: Colony
    src: NodeId
    dst: NodeId
    volume: float
    path: list[NodeId] = field(default_factory=list)
    step_hops: list[int] = field(default_factory=list)
    hop_count: int = 0
    visited: set[NodeId] = field(default_factory=set)
    status: AntStatus = AntStatus.ALIVE

    def __post_init__(self):
        if self.src == self.dst:
            raise ValueError("forward ant needs distinct src and dst")
        if not self.visited:
            self.visited = {self.src}


def transition_weights(
    node: NodeId,
    dst: NodeId,
    candidates: list[NodeId],
    states: list[NodeState],
    params: ColonyParams,
) -> list[float]:
    """Selection weight tau^alpha * eta^beta per candidate.

    Two floors keep exploration alive without touching the update rules:

    - Pheromone is floored at tau_min (at 0 if tau_min is negative). Only
      the exploiting colony treats tau_min as a hard no-entry veto, through
      its candidate filter; explorer colonies are merely repelled, so an arc
      marked negative still sees the occasional ant and can be reinforced
      back. A hard zero would starve marked arcs of traffic forever.
    - The desirability factor applies only once an estimate exists: a
      neighbor whose distance to the destination was never observed weighs
      in by pheromone alone (factor 1). A cold-start zero would veto every
      unexplored branch outright, including the final step into the
      destination, whose self-desirability no rule ever writes.
    """
    tau_floor = max(params.tau_min, 0.0)
    weights = []
    for cand in candidates:
        tau = max(states[node].get_tau(cand, dst), tau_floor)
        eta = states[cand].get_eta(dst)
        factor = eta**params.beta if eta > 0.0 else 1.0
        weights.append(tau**params.alpha * factor)
    return weights


def select_next_hop(
    node: NodeId,
    dst: NodeId,
    visited: set[NodeId],
    colony: Colony,
    states: list[NodeState],
    overlay: OverlayNetwork,
    net: PhysicalNetwork,
    params: ColonyParams,
    rng: random.Random,
) -> NodeId | None:
    """Pick the next node, or None when no admissible candidate remains.

    An overlay link toward the ant's destination is always taken when its
    endpoint is unvisited. Otherwise the choice is proportional over
    unvisited physical neighbors; exploiting ants first drop neighbors below
    the no-entry threshold. All-zero weights fall back to a uniform pick.
    """
    link = overlay.get(node, dst)
    if link is not None and link.endpoint not in visited:
        return link.endpoint
    candidates = [nb for nb in net.adjacency[node] if nb not in visited]
    if colony is Colony.EXPLOITER:
        candidates = [
            nb for nb in candidates if states[node].get_tau(nb, dst) >= params.tau_min
        ]
    if not candidates:
        return None
    weights = transition_weights(node, dst, candidates, states, params)
    total = math.fsum(weights)
    if total <= 0.0:
        weights = [1.0] * len(candidates)
        total = float(len(candidates))
    pick = rng.random() * total
    cum = 0.0
    for cand, w in zip(candidates, weights):
        cum += w
        if pick < cum:
            return cand
    return candidates[-1]


def forward_walk(
    ant: ForwardAnt,
    states: list[NodeState],
    overlay: OverlayNetwork,
    net: PhysicalNetwork,
    params: ColonyParams,
    rng: random.Random,
) -> ForwardAnt:
    """Walk src -> dst, recording the path and feeding node estimators.

    Each move costs the hop length of the arc used (1 for a physical edge,
    the pinned path length for an overlay shortcut). The node just entered
    updates its demand EMA and its best-known distance from the source.
    """
    if ant.status is not AntStatus.ALIVE:
        raise ValueError(f"cannot walk an ant with status {ant.status}")
    current = ant.src
    while current != ant.dst:
        nxt = select_next_hop(
            current, ant.dst, ant.visited, ant.colony, states, overlay, net, params, rng
        )
        if nxt is None:
            if ant.colony is Colony.EXPLOITER and any(
                nb not in ant.visited for nb in net.adjacency[current]
            ):
                ant.status = AntStatus.BLOCKED
            else:
                ant.status = AntStatus.DEAD_END
            return ant
        link = overlay.get(current, ant.dst)
        if link is not None and link.endpoint == nxt:
            hop = link.hop_length
        else:
            hop = 1
        ant.path.append(nxt)
        ant.step_hops.append(hop)
        ant.visited.add(nxt)
        ant.hop_count += hop
        state = states[nxt]
        state.demand_est[ant.dst] = rules.update_demand(
            state.get_demand(ant.dst), ant.volume, params
        )
        state.hops_from[ant.src] = rules.update_hops_from(
            state.get_hops_from(ant.src), ant.hop_count
        )
        current = nxt
    ant.status = AntStatus.ARRIVED
    return ant


def classify_bad_trail(ant: ForwardAnt, states: list[NodeState], gamma: float) -> bool:
    """An arrived trail is bad when it exceeds gamma times the best known.

    The baseline is the destination's recorded best hop count from the
    source; with no finite baseline nothing can be judged bad yet.
    """
    if ant.status is not AntStatus.ARRIVED:
        raise ValueError("only arrived ants can be classified")
    best_known = states[ant.dst].get_hops_from(ant.src)
    if not math.isfinite(best_known):
        return False
    return ant.hop_count > gamma * best_known


@dataclass
class BackwardAnt:
    origin: ForwardAnt
    is_bad: bool = False
    min_overlay_cost: float = math.inf
    candidate: NodeId | None = None
    sigma_at_candidate: float | None = None


def backward_walk(
    bant: BackwardAnt,
    states: list[NodeState],
    net: PhysicalNetwork,
    params: ColonyParams,
    costs: CostParams,
    eta_denominator: str = "to-dst",
) -> BackwardAnt:
    """Retrace the forward path dst -> src, updating every intermediate node.

    At each intermediate node (forward-successor w): remaining-hops estimate,
    desirability, pheromone on the arc toward w, then overlay-candidate
    bookkeeping. Bad trails get repellent marking from negative-colony ants
    and are excluded from overlay candidacy altogether. Cost ties resolve
    toward the node nearest the source.
    """
    fa = bant.origin
    if fa.status is not AntStatus.ARRIVED:
        raise ValueError("backward ant requires an arrived forward ant")
    path = fa.path
    for k in range(len(path) - 2, -1, -1):
        v = path[k]
        w = path[k + 1]
        if fa.step_hops[k + 1] == 1 and not net.has_edge(v, w):
            raise RuntimeError(
                f"forward path stores a physical step {v}->{w} that is not an edge"
            )
        state = states[v]
        hops_from_src = state.get_hops_from(fa.src)
        if not math.isfinite(hops_from_src):
            raise RuntimeError(f"node {v} on the path has no hops-from estimate")
        hops_to_dst = rules.update_hops_to(fa.hop_count, int(hops_from_src))
        state.hops_to[fa.dst] = hops_to_dst
        denominator = hops_to_dst if eta_denominator == "to-dst" else int(hops_from_src)
        state.eta[fa.dst] = rules.update_eta(state.get_eta(fa.dst), denominator)
        tau = state.get_tau(w, fa.dst)
        if bant.is_bad and fa.colony is Colony.NEGATIVE:
            state.set_tau(w, fa.dst, rules.negative_update(tau, params))
        else:
            state.set_tau(w, fa.dst, rules.local_positive_update(tau, params))
        if not bant.is_bad:
            cost = ant_overlay_cost(
                int(hops_from_src), state.get_demand(fa.dst), hops_to_dst, costs
            )
            if cost > 0:
                state.sigma = rules.update_sigma(state.sigma, cost, params)
            if cost <= bant.min_overlay_cost and state.get_tau(w, fa.dst) >= params.tau_min:
                bant.min_overlay_cost = cost
                bant.candidate = v
                bant.sigma_at_candidate = state.sigma
    return bant


def establish_overlay_at_source(
    bant: BackwardAnt,
    overlay: OverlayNetwork,
    net: PhysicalNetwork,
    now: int,
    ttl: int,
) -> LogicalLink | None:
    """Let the source link to the cheapest candidate, unless already served."""
    if bant.candidate is None or bant.candidate == bant.origin.src:
        return None
    return overlay.establish(
        net,
        owner=bant.origin.src,
        endpoint=bant.candidate,
        serves_dst=bant.origin.dst,
        now=now,
        ttl=ttl,
    )
