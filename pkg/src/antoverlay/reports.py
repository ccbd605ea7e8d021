"""Run artifacts: convergence CSV, per-destination summary, overlay snapshot,
and the manifest that makes a run reproducible byte for byte."""

from __future__ import annotations

import json
from dataclasses import asdict

from . import __version__
from .ants import AntStatus
from .cost import CostResult
from .engine import Metrics, SimConfig, Simulation
from .topology import PhysicalNetwork, render_overlay_lines, shortest_hops

TRACE_HEADER = "round,colony,dst,hop_length,status"
SUMMARY_HEADER = "dst,min_hop_length,bfs_shortest,match"


def render_trace_csv(metrics: Metrics) -> str:
    """One row per dispatched ant, in dispatch order."""
    lines = [TRACE_HEADER]
    lines.extend(
        f"{r.round},{r.colony},{r.dst},{r.hop_count},{r.status}" for r in metrics.trace
    )
    return "\n".join(lines) + "\n"


def render_summary_csv(
    metrics: Metrics, net: PhysicalNetwork, src: int, destinations: tuple[int, ...]
) -> str:
    """Minimum observed hop length per destination against the BFS oracle."""
    bfs = shortest_hops(net, src)
    lines = [SUMMARY_HEADER]
    for dst in destinations:
        best = metrics.min_hop(dst)
        if best is None:
            lines.append(f"{dst},,{bfs[dst]},false")
        else:
            match = "true" if best == bfs[dst] else "false"
            lines.append(f"{dst},{best},{bfs[dst]},{match}")
    return "\n".join(lines) + "\n"


def render_overlay_snapshot(sim: Simulation, final_cost: CostResult) -> str:
    """Link lines framed by a header comment and a closing cost line."""
    lines = [f"# overlay round {sim.rounds_done}"]
    lines.extend(render_overlay_lines(sim.overlay))
    lines.append(
        f"# total_cost {final_cost.value:.9g} "
        f"unreachable_pairs {len(final_cost.unreachable_pairs)}"
    )
    return "\n".join(lines) + "\n"


def build_manifest(config: SimConfig, net: PhysicalNetwork) -> dict:
    """Everything needed to reproduce the run, graph content included."""
    cfg = asdict(config)
    cfg["graph_text"] = net.to_text()
    return {
        "tool": "antoverlay",
        "version": __version__,
        "graph_fingerprint": net.fingerprint(),
        "config": cfg,
    }


def render_manifest(manifest: dict) -> str:
    return json.dumps(manifest, sort_keys=True, indent=2) + "\n"


def config_from_manifest(manifest: dict) -> SimConfig:
    """Rebuild a SimConfig from a manifest produced by build_manifest."""
    from .colony import ColonyParams
    from .cost import CostParams

    cfg = dict(manifest["config"])
    cfg["colony"] = ColonyParams(**cfg["colony"])
    cfg["cost"] = CostParams(**cfg["cost"])
    if cfg.get("destinations") is not None:
        cfg["destinations"] = tuple(cfg["destinations"])
    return SimConfig(**cfg)


def summary_rows(
    metrics: Metrics, net: PhysicalNetwork, src: int, destinations: tuple[int, ...]
) -> list[dict]:
    """Structured form of the summary CSV for API responses."""
    bfs = shortest_hops(net, src)
    rows = []
    for dst in destinations:
        best = metrics.min_hop(dst)
        rows.append(
            {
                "dst": dst,
                "min_hop_length": best,
                "bfs_shortest": bfs[dst],
                "match": best == bfs[dst],
            }
        )
    return rows


def totals(metrics: Metrics) -> dict:
    dispatched = len(metrics.trace)
    arrived = sum(1 for r in metrics.trace if r.status == AntStatus.ARRIVED.value)
    dead_end = sum(1 for r in metrics.trace if r.status == AntStatus.DEAD_END.value)
    blocked = sum(1 for r in metrics.trace if r.status == AntStatus.BLOCKED.value)
    return {
        "dispatched": dispatched,
        "arrived": arrived,
        "dead_end": dead_end,
        "blocked": blocked,
    }
