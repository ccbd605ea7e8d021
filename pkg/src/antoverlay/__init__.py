"""Ant-colony construction of low-cost overlay routing networks.

Three cooperating ant colonies explore a physical network from a source
node: positive explorers reinforce good trails, negative explorers mark bad
ones with repellent pheromone, and exploiting ants follow the reinforced
corridor under a no-entry threshold. Returning ants anchor temporary
overlay links at the cheapest node of their path, converging on shortest
routes while keeping the overlay cheap.
"""

__version__ = "0.1.0"

from .colony import ColonyParams
from .cost import CostParams, CostResult, TrafficDemand, total_cost
from .engine import Metrics, SimConfig, Simulation, run
from .topology import (
    OverlayNetwork,
    PhysicalNetwork,
    generate_random_network,
    shortest_hops,
)

__all__ = [
    "ColonyParams",
    "CostParams",
    "CostResult",
    "TrafficDemand",
    "total_cost",
    "Metrics",
    "SimConfig",
    "Simulation",
    "run",
    "OverlayNetwork",
    "PhysicalNetwork",
    "generate_random_network",
    "shortest_hops",
    "__version__",
]
