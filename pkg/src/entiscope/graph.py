"""Entity co-occurrence network: construction from sentence-level mentions,
betweenness centrality, community detection, and force-directed layout.

All algorithms are deterministic for a fixed seed: sweep orders come from a
seeded permutation, ties resolve to the lowest community id, and node and
edge orders follow cluster order.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .annotate import EntityMention, EntityType
from .ingest import Document

__all__ = [
    "GraphError",
    "CoocGraph",
    "Layout",
    "build_graph",
    "prune_edges",
    "betweenness",
    "modularity",
    "louvain",
    "force_atlas",
]


class GraphError(ValueError):
    """Raised on inconsistent graph input."""


class CoocGraph:
    """Weighted undirected graph; no self-loops, one edge per pair."""

    def __init__(self) -> None:
        self.node_ids: list[str] = []
        self.labels: dict[str, str] = {}
        self.node_types: dict[str, str] = {}
        self._index: dict[str, int] = {}
        self._adj: dict[str, dict[str, int]] = {}

    def add_node(self, node_id: str, label: str, etype: str = "") -> None:
        if node_id in self._index:
            raise GraphError(f"duplicate node id {node_id!r}")
        self._index[node_id] = len(self.node_ids)
        self.node_ids.append(node_id)
        self.labels[node_id] = label
        self.node_types[node_id] = etype
        self._adj[node_id] = {}

    def add_edge(self, u: str, v: str, weight: int = 1) -> None:
        if u == v:
            raise GraphError("self-loops are not allowed")
        if u not in self._index or v not in self._index:
            raise GraphError(f"edge references unknown node: {u!r} or {v!r}")
        if v in self._adj[u]:
            raise GraphError(f"duplicate edge {u!r}-{v!r}")
        if weight < 1:
            raise GraphError("edge weight must be >= 1")
        self._adj[u][v] = weight
        self._adj[v][u] = weight

    def increment_edge(self, u: str, v: str, by: int = 1) -> None:
        if u == v:
            raise GraphError("self-loops are not allowed")
        w = self._adj[u].get(v, 0) + by
        self._adj[u][v] = w
        self._adj[v][u] = w

    @property
    def node_count(self) -> int:
        return len(self.node_ids)

    def neighbors(self, u: str) -> dict[str, int]:
        return self._adj[u]

    def degree(self, u: str) -> int:
        return len(self._adj[u])

    def weighted_degree(self, u: str) -> int:
        return sum(self._adj[u].values())

    def total_weight(self) -> int:
        return sum(w for _, _, w in self.edges())

    def edges(self) -> list[tuple[str, str, int]]:
        """Edges with endpoints ordered by node insertion index."""
        out = []
        for u in self.node_ids:
            iu = self._index[u]
            for v, w in self._adj[u].items():
                if self._index[v] > iu:
                    out.append((u, v, w))
        out.sort(key=lambda e: (self._index[e[0]], self._index[e[1]]))
        return out

    def has_edge(self, u: str, v: str) -> bool:
        return v in self._adj.get(u, {})


@dataclass(frozen=True)
class Layout:
    positions: dict[str, tuple[float, float]]
    seed: int
    iterations: int


def build_graph(
    clusters: Sequence,
    mentions: Iterable[EntityMention],
    documents: Mapping[str, Document] | None = None,
) -> CoocGraph:
    """One node per cluster with at least one mention; each sentence adds +1
    to every unordered pair of distinct clusters mentioned in it (a pair
    counts at most once per sentence).

    ``clusters`` must expose ``etype``, ``canonical`` and ``surfaces``;
    persons and organizations share one graph.
    """
    surface_to_cluster: dict[tuple[str, str], int] = {}
    for idx, c in enumerate(clusters):
        for s in c.surfaces:
            surface_to_cluster[(c.etype.value, s)] = idx

    per_sentence: dict[tuple[str, int], set[int]] = {}
    mentioned: set[int] = set()
    for m in mentions:
        if m.etype not in (EntityType.ORGANIZATION, EntityType.PERSON):
            continue
        if documents is not None and m.doc_id in documents:
            n_sent = len(documents[m.doc_id].sentences)
            if not 0 <= m.sentence_index < n_sent:
                raise GraphError(
                    f"mention {m.surface!r} references sentence {m.sentence_index} "
                    f"outside document {m.doc_id!r}"
                )
        key = (m.etype.value, m.surface)
        if key not in surface_to_cluster:
            raise GraphError(f"mention {m.surface!r} ({m.etype.value}) maps to no cluster")
        idx = surface_to_cluster[key]
        mentioned.add(idx)
        per_sentence.setdefault((m.doc_id, m.sentence_index), set()).add(idx)

    g = CoocGraph()
    node_id_of: dict[int, str] = {}
    for idx, c in enumerate(clusters):
        if idx in mentioned:
            node_id = f"n{len(g.node_ids)}"
            node_id_of[idx] = node_id
            g.add_node(node_id, label=c.canonical, etype=c.etype.value)

    for key in sorted(per_sentence):
        present = sorted(per_sentence[key])
        for a in range(len(present)):
            for b in range(a + 1, len(present)):
                g.increment_edge(node_id_of[present[a]], node_id_of[present[b]])
    return g


def prune_edges(g: CoocGraph, min_weight: int = 1) -> CoocGraph:
    """Copy of the graph keeping only edges with weight >= min_weight;
    nodes are kept even if isolated."""
    out = CoocGraph()
    for n in g.node_ids:
        out.add_node(n, g.labels[n], g.node_types[n])
    for u, v, w in g.edges():
        if w >= min_weight:
            out.add_edge(u, v, w)
    return out


def betweenness(g: CoocGraph) -> dict[str, float]:
    """Shortest-path betweenness on the unweighted skeleton, normalized by
    the (n-1)(n-2)/2 undirected pair count."""
    bc = {v: 0.0 for v in g.node_ids}
    for s in g.node_ids:
        # Single-source shortest paths with path counting.
        stack: list[str] = []
        preds: dict[str, list[str]] = {v: [] for v in g.node_ids}
        sigma = {v: 0 for v in g.node_ids}
        dist = {v: -1 for v in g.node_ids}
        sigma[s] = 1
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in g.neighbors(v):
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        # Dependency accumulation in reverse BFS order.
        delta = {v: 0.0 for v in g.node_ids}
        while stack:
            w = stack.pop()
            for v in preds[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != s:
                bc[w] += delta[w]
    n = g.node_count
    if n > 2:
        # Ordered-pair accumulation halved, then pair-normalized.
        scale = 1.0 / ((n - 1) * (n - 2))
        for v in bc:
            bc[v] *= scale
    else:
        bc = {v: 0.0 for v in bc}
    return bc


def modularity(g: CoocGraph, partition: Mapping[str, int]) -> float:
    """Weighted modularity of a total partition; 0 for an empty graph."""
    for v in g.node_ids:
        if v not in partition:
            raise GraphError(f"partition misses node {v!r}")
    m = g.total_weight()
    if m == 0:
        return 0.0
    internal: dict[int, float] = {}
    degree_sum: dict[int, float] = {}
    for v in g.node_ids:
        degree_sum[partition[v]] = degree_sum.get(partition[v], 0.0) + g.weighted_degree(v)
    for u, v, w in g.edges():
        if partition[u] == partition[v]:
            internal[partition[u]] = internal.get(partition[u], 0.0) + w
    m2 = 2.0 * m
    q = 0.0
    for c, dsum in degree_sum.items():
        q += 2.0 * internal.get(c, 0.0) / m2 - (dsum / m2) ** 2
    return q


def _aggregate_modularity(
    adj: list[dict[int, float]],
    loops: list[float],
    community: list[int],
    m2: float,
) -> float:
    internal: dict[int, float] = {}
    degree_sum: dict[int, float] = {}
    for v, neighbors in enumerate(adj):
        c = community[v]
        k = 2.0 * loops[v] + sum(neighbors.values())
        degree_sum[c] = degree_sum.get(c, 0.0) + k
        internal[c] = internal.get(c, 0.0) + 2.0 * loops[v]
        for u, w in neighbors.items():
            if u > v and community[u] == c:
                internal[c] = internal.get(c, 0.0) + 2.0 * w
    q = 0.0
    for c, dsum in degree_sum.items():
        q += internal.get(c, 0.0) / m2 - (dsum / m2) ** 2
    return q


def _local_move(
    adj: list[dict[int, float]],
    loops: list[float],
    m2: float,
    rng: random.Random,
    trace: list[float] | None,
) -> tuple[list[int], bool]:
    n = len(adj)
    community = list(range(n))
    degree = [2.0 * loops[v] + sum(adj[v].values()) for v in range(n)]
    comm_degree = degree[:]  # total degree per community id
    improved = False
    moved = True
    q_prev = _aggregate_modularity(adj, loops, community, m2)
    if trace is not None:
        trace.append(q_prev)
    while moved:
        moved = False
        order = list(range(n))
        rng.shuffle(order)
        for v in order:
            old = community[v]
            # Weight from v to each neighboring community.
            links: dict[int, float] = {}
            for u, w in adj[v].items():
                links[community[u]] = links.get(community[u], 0.0) + w
            comm_degree[old] -= degree[v]
            candidates = set(links)
            candidates.add(old)
            best_c, best_gain = old, links.get(old, 0.0) - comm_degree[old] * degree[v] / m2
            for c in sorted(candidates):
                gain = links.get(c, 0.0) - comm_degree[c] * degree[v] / m2
                if gain > best_gain + 1e-12 or (
                    abs(gain - best_gain) <= 1e-12 and c < best_c
                ):
                    best_c, best_gain = c, gain
            community[v] = best_c
            comm_degree[best_c] += degree[v]
            if best_c != old:
                moved = True
                improved = True
        q_now = _aggregate_modularity(adj, loops, community, m2)
        # Each sweep may only raise modularity.
        assert q_now >= q_prev - 1e-9, "modularity decreased within a local-move sweep"
        q_prev = q_now
        if trace is not None:
            trace.append(q_now)
    return community, improved


def louvain(g: CoocGraph, seed: int = 0, trace: list[float] | None = None) -> dict[str, int]:
    """Greedy modularity optimization: seeded local-move sweeps followed by
    graph aggregation, repeated until the gain drops below 1e-7.

    ``trace``, when given, collects the modularity after every sweep.
    Returns a total partition with community ids renumbered in node order.
    """
    n = g.node_count
    ids = g.node_ids
    if n == 0:
        return {}
    rng = random.Random(seed)

    adj: list[dict[int, float]] = [{} for _ in range(n)]
    index = {v: i for i, v in enumerate(ids)}
    for u, v, w in g.edges():
        adj[index[u]][index[v]] = float(w)
        adj[index[v]][index[u]] = float(w)
    loops = [0.0] * n
    m = g.total_weight()
    if m == 0:
        return {v: i for i, v in enumerate(ids)}
    m2 = 2.0 * m

    node_community = list(range(n))  # original node -> current-level node
    q_level = _aggregate_modularity(adj, loops, list(range(len(adj))), m2)
    while True:
        community, improved = _local_move(adj, loops, m2, rng, trace)
        if not improved:
            break
        # Renumber communities consecutively in node order.
        relabel: dict[int, int] = {}
        for c in community:
            if c not in relabel:
                relabel[c] = len(relabel)
        community = [relabel[c] for c in community]
        node_community = [community[c] for c in node_community]

        q_now = _aggregate_modularity(adj, loops, community, m2)
        if q_now - q_level < 1e-7:
            break
        q_level = q_now

        # Aggregate: communities become nodes, intra weights become loops.
        size = len(relabel)
        new_adj: list[dict[int, float]] = [{} for _ in range(size)]
        new_loops = [0.0] * size
        for v, neighbors in enumerate(adj):
            cv = community[v]
            new_loops[cv] += loops[v]
            for u, w in neighbors.items():
                cu = community[u]
                if cu == cv:
                    if u > v:
                        new_loops[cv] += w
                else:
                    new_adj[cv][cu] = new_adj[cv].get(cu, 0.0) + w
        adj, loops = new_adj, new_loops
        if len(adj) == 1:
            break

    relabel = {}
    result: dict[str, int] = {}
    for i, v in enumerate(ids):
        c = node_community[i]
        if c not in relabel:
            relabel[c] = len(relabel)
        result[v] = relabel[c]
    return result


def force_atlas(
    g: CoocGraph,
    seed: int = 0,
    iterations: int = 100,
    repulsion: float = 10.0,
    attraction: float = 0.05,
    initial_extent: float = 100.0,
    max_step: float = 20.0,
) -> Layout:
    """Force-directed layout: degree-scaled repulsion between all pairs,
    attraction along edges only (proportional to distance times weight),
    displacement capped by a linearly cooling step size.

    Deterministic for a fixed seed; iterations=0 returns the seeded
    initialization unchanged.
    """
    if iterations < 0:
        raise GraphError("iterations must be >= 0")
    rng = random.Random(seed)
    ids = g.node_ids
    pos = {
        v: (rng.uniform(-initial_extent, initial_extent),
            rng.uniform(-initial_extent, initial_extent))
        for v in ids
    }
    if not ids:
        return Layout(positions=pos, seed=seed, iterations=iterations)
    deg = {v: g.degree(v) for v in ids}

    for t in range(iterations):
        disp = {v: [0.0, 0.0] for v in ids}
        for i, u in enumerate(ids):
            xu, yu = pos[u]
            for v in ids[i + 1 :]:
                xv, yv = pos[v]
                dx, dy = xu - xv, yu - yv
                d = math.hypot(dx, dy)
                if d < 1e-9:
                    # Deterministic nudge for coincident points.
                    dx, dy, d = 1e-4, 1e-4, 1e-4 * math.sqrt(2.0)
                f = repulsion * (deg[u] + 1) * (deg[v] + 1) / d
                ux, uy = dx / d, dy / d
                disp[u][0] += ux * f
                disp[u][1] += uy * f
                disp[v][0] -= ux * f
                disp[v][1] -= uy * f
        for u, v, w in g.edges():
            xu, yu = pos[u]
            xv, yv = pos[v]
            dx, dy = xv - xu, yv - yu
            d = math.hypot(dx, dy)
            if d < 1e-9:
                continue
            f = attraction * d * w
            ux, uy = dx / d, dy / d
            disp[u][0] += ux * f
            disp[u][1] += uy * f
            disp[v][0] -= ux * f
            disp[v][1] -= uy * f
        step = max_step * (1.0 - t / iterations)
        for v in ids:
            dx, dy = disp[v]
            d = math.hypot(dx, dy)
            if d > step and d > 0:
                dx, dy = dx / d * step, dy / d * step
            x, y = pos[v]
            pos[v] = (x + dx, y + dy)
    return Layout(positions=pos, seed=seed, iterations=iterations)
