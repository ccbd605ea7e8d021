"""Physical graph substrate, overlay link bookkeeping, and exact path oracles.

The physical network is a connected, unweighted, undirected graph with dense
integer node ids. Overlay state is a set of directional logical links, each
pinned to a physical shortest path at creation time and tagged with the
destination it serves.
"""

from __future__ import annotations

import hashlib
import random
from collections import deque
from dataclasses import dataclass


NodeId = int


class GraphError(ValueError):
    """Invalid graph input or infeasible generation parameters."""


class OverlayError(ValueError):
    """Invalid overlay operation."""


class PhysicalNetwork:
    """Undirected connected graph over nodes 0..n-1.

    Edges are stored as (u, v) pairs with u < v; adjacency lists are kept
    sorted so every traversal is deterministic.
    """

    def __init__(self, n: int, edges):
        if n < 1:
            raise GraphError(f"node count must be >= 1, got {n}")
        canonical = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop on node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            key = (u, v) if u < v else (v, u)
            if key in canonical:
                raise GraphError(f"duplicate edge {key}")
            canonical.add(key)
        self.n = n
        self.edges = frozenset(canonical)
        adjacency: list[list[int]] = [[] for _ in range(n)]
        for u, v in canonical:
            adjacency[u].append(v)
            adjacency[v].append(u)
        for nbrs in adjacency:
            nbrs.sort()
        self.adjacency = adjacency
        if not self._connected():
            raise GraphError("graph is not connected")

    def _connected(self) -> bool:
        if self.n == 1:
            return True
        seen = [False] * self.n
        seen[0] = True
        queue = deque([0])
        count = 1
        while queue:
            u = queue.popleft()
            for v in self.adjacency[u]:
                if not seen[v]:
                    seen[v] = True
                    count += 1
                    queue.append(v)
        return count == self.n

    def has_edge(self, u: NodeId, v: NodeId) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def to_text(self) -> str:
        """Canonical file format: 'n <count>' then one 'u v' line per edge."""
        lines = [f"n {self.n}"]
        lines.extend(f"{u} {v}" for u, v in self.sorted_edges())
        return "\n".join(lines) + "\n"

    def fingerprint(self) -> str:
        """Hash of the canonical edge list, used in run manifests."""
        return hashlib.sha256(self.to_text().encode("ascii")).hexdigest()

    @classmethod
    def from_text(cls, text: str) -> "PhysicalNetwork":
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines:
            raise GraphError("empty graph file")
        head = lines[0].split()
        if len(head) != 2 or head[0] != "n":
            raise GraphError(f"bad header line {lines[0]!r}, expected 'n <count>'")
        try:
            n = int(head[1])
        except ValueError:
            raise GraphError(f"bad node count {head[1]!r}") from None
        edges = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise GraphError(f"bad edge line {ln!r}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphError(f"bad edge line {ln!r}") from None
            edges.append((u, v))
        return cls(n, edges)


def generate_random_network(n: int, avg_degree: float, seed: int) -> PhysicalNetwork:
    """Seeded random connected graph with exactly round(n*avg_degree/2) edges.

    A uniform random spanning tree (random-walk construction) guarantees
    connectivity; the remaining edges are drawn uniformly among the unused
    node pairs.
    """
    if n < 2:
        raise GraphError(f"need at least 2 nodes, got {n}")
    target_float = n * avg_degree / 2.0
    m = round(target_float)
    if abs(target_float - m) > 1e-9:
        raise GraphError(
            f"n*avg_degree/2 must be an integer edge count, got {target_float}"
        )
    if m < n - 1:
        raise GraphError(
            f"avg_degree {avg_degree} too small for a connected graph on {n} nodes"
        )
    max_edges = n * (n - 1) // 2
    if m > max_edges:
        raise GraphError(f"{m} edges exceed the {max_edges} possible on {n} nodes")

    rng = random.Random(seed)
    edges: set[tuple[int, int]] = set()

    # Aldous-Broder walk on the complete graph: first-entry edges form a
    # uniformly random spanning tree.
    current = rng.randrange(n)
    visited = {current}
    while len(visited) < n:
        step = rng.randrange(n - 1)
        nxt = step if step < current else step + 1
        if nxt not in visited:
            visited.add(nxt)
            edges.add((min(current, nxt), max(current, nxt)))
        current = nxt

    while len(edges) < m:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v:
            continue
        key = (min(u, v), max(u, v))
        if key not in edges:
            edges.add(key)

    return PhysicalNetwork(n, edges)


def shortest_hops(net: PhysicalNetwork, src: NodeId) -> list[int]:
    """Exact minimum hop counts from src to every node (BFS)."""
    dist = [-1] * net.n
    dist[src] = 0
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for v in net.adjacency[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def physical_path(net: PhysicalNetwork, src: NodeId, dst: NodeId) -> list[NodeId]:
    """One shortest path src..dst; ties broken by visiting lower ids first."""
    if src == dst:
        return [src]
    parent = [-1] * net.n
    seen = [False] * net.n
    seen[src] = True
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for v in net.adjacency[u]:
            if not seen[v]:
                seen[v] = True
                parent[v] = u
                if v == dst:
                    path = [dst]
                    while path[-1] != src:
                        path.append(parent[path[-1]])
                    path.reverse()
                    return path
                queue.append(v)
    raise GraphError(f"no path from {src} to {dst}")


@dataclass(frozen=True)
class LogicalLink:
    """Directional overlay link owner -> endpoint, serving one destination."""

    owner: NodeId
    endpoint: NodeId
    serves_dst: NodeId
    physical_path: tuple[NodeId, ...]
    hop_length: int
    created_round: int
    expires_round: int

    def __post_init__(self):
        if self.owner == self.endpoint:
            raise OverlayError("logical link owner equals endpoint")
        if self.hop_length != len(self.physical_path) - 1 or self.hop_length < 1:
            raise OverlayError("hop_length inconsistent with physical path")
        if self.physical_path[0] != self.owner or self.physical_path[-1] != self.endpoint:
            raise OverlayError("physical path does not join owner and endpoint")
        if self.expires_round <= self.created_round:
            raise OverlayError("link must expire after its creation round")


class OverlayNetwork:
    """Set of logical links indexed by (owner, serves_dst), one link per key."""

    def __init__(self):
        self._index: dict[tuple[NodeId, NodeId], LogicalLink] = {}

    def __len__(self) -> int:
        return len(self._index)

    def links(self) -> list[LogicalLink]:
        return sorted(self._index.values(), key=lambda l: (l.owner, l.serves_dst))

    def get(self, owner: NodeId, serves_dst: NodeId) -> LogicalLink | None:
        return self._index.get((owner, serves_dst))

    def owned_by(self, owner: NodeId) -> list[LogicalLink]:
        return [l for l in self.links() if l.owner == owner]

    def insert(self, link: LogicalLink) -> None:
        key = (link.owner, link.serves_dst)
        if key in self._index:
            raise OverlayError(f"link already present for {key}")
        self._index[key] = link

    def establish(
        self,
        net: PhysicalNetwork,
        owner: NodeId,
        endpoint: NodeId,
        serves_dst: NodeId,
        now: int,
        ttl: int,
    ) -> LogicalLink | None:
        """Create a link unless (owner, serves_dst) is already served.

        Returns the new link, or None for the no-op case.
        """
        if owner == endpoint:
            raise OverlayError("cannot establish a link from a node to itself")
        if (owner, serves_dst) in self._index:
            return None
        path = tuple(physical_path(net, owner, endpoint))
        link = LogicalLink(
            owner=owner,
            endpoint=endpoint,
            serves_dst=serves_dst,
            physical_path=path,
            hop_length=len(path) - 1,
            created_round=now,
            expires_round=now + ttl,
        )
        self._index[(owner, serves_dst)] = link
        return link

    def expire(self, now: int) -> list[LogicalLink]:
        """Drop every link with expires_round <= now; returns the removed links."""
        dead = [k for k, l in self._index.items() if l.expires_round <= now]
        removed = []
        for k in dead:
            removed.append(self._index.pop(k))
        removed.sort(key=lambda l: (l.owner, l.serves_dst))
        return removed


def transit_counts_from(
    overlay: OverlayNetwork, net: PhysicalNetwork, origin: NodeId
) -> list[int]:
    """Minimum virtual-link counts from origin to every node.

    The route graph unions physical edges (bidirectional) with logical links
    (owner -> endpoint); every arc costs one virtual link. Unreachable nodes
    get -1.
    """
    out_links: dict[NodeId, list[NodeId]] = {}
    for link in overlay.links():
        out_links.setdefault(link.owner, []).append(link.endpoint)
    dist = [-1] * net.n
    dist[origin] = 0
    queue = deque([origin])
    while queue:
        u = queue.popleft()
        for v in net.adjacency[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
        for v in out_links.get(u, ()):
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def overlay_transit_count(
    overlay: OverlayNetwork, net: PhysicalNetwork, i: NodeId, j: NodeId
) -> int | None:
    """Transit count between one node pair; None when j is unreachable."""
    d = transit_counts_from(overlay, net, i)[j]
    return None if d < 0 else d


def render_overlay_lines(overlay: OverlayNetwork) -> list[str]:
    """Snapshot body: 'owner endpoint serves_dst hop_length expires_round'."""
    return [
        f"{l.owner} {l.endpoint} {l.serves_dst} {l.hop_length} {l.expires_round}"
        for l in overlay.links()
    ]


def parse_overlay_snapshot(text: str, net: PhysicalNetwork) -> OverlayNetwork:
    """Rebuild an overlay from snapshot lines; comment lines are skipped.

    Physical paths are recomputed on the (static) substrate; a mismatch with
    the recorded hop_length means the snapshot does not belong to this graph.
    """
    overlay = OverlayNetwork()
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        parts = ln.split()
        if len(parts) != 5:
            raise OverlayError(f"bad overlay line {ln!r}")
        owner, endpoint, serves_dst, hop_length, expires = (int(p) for p in parts)
        path = tuple(physical_path(net, owner, endpoint))
        if len(path) - 1 != hop_length:
            raise OverlayError(
                f"hop_length {hop_length} does not match the substrate "
                f"distance {len(path) - 1} for link {owner}->{endpoint}"
            )
        overlay.insert(
            LogicalLink(
                owner=owner,
                endpoint=endpoint,
                serves_dst=serves_dst,
                physical_path=path,
                hop_length=hop_length,
                created_round=expires - 1,
                expires_round=expires,
            )
        )
    return overlay
