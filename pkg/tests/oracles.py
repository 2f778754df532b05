"""Independent brute-force oracles.  These deliberately avoid the package's
algorithms: betweenness is recomputed from all-pairs shortest-path counts,
modularity from the direct double sum, community optima by enumerating set
partitions, and co-occurrence weights by recounting sentence pairs."""

from __future__ import annotations

import itertools
from collections import deque

from entiscope.graph import CoocGraph


def _bfs_counts(g: CoocGraph, source: str) -> tuple[dict[str, int], dict[str, int]]:
    dist = {source: 0}
    counts = {source: 1}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
            if dist[w] == dist[v] + 1:
                counts[w] = counts.get(w, 0) + counts[v]
    return dist, counts


def brute_betweenness(g: CoocGraph) -> dict[str, float]:
    """BC from sigma_sv * sigma_vt / sigma_st over all unordered pairs."""
    nodes = g.node_ids
    dist: dict[str, dict[str, int]] = {}
    sigma: dict[str, dict[str, int]] = {}
    for s in nodes:
        dist[s], sigma[s] = _bfs_counts(g, s)
    bc = {v: 0.0 for v in nodes}
    for s, t in itertools.combinations(nodes, 2):
        if t not in dist[s]:
            continue
        d_st = dist[s][t]
        total = sigma[s][t]
        for v in nodes:
            if v == s or v == t or v not in dist[s] or v not in dist[t]:
                continue
            if dist[s][v] + dist[t][v] == d_st:
                bc[v] += sigma[s][v] * sigma[t][v] / total
    n = len(nodes)
    if n > 2:
        norm = (n - 1) * (n - 2) / 2.0
        for v in bc:
            bc[v] /= norm
    return bc


def brute_modularity(g: CoocGraph, partition: dict[str, int]) -> float:
    """Direct double-sum definition over ordered node pairs."""
    m = g.total_weight()
    if m == 0:
        return 0.0
    deg = {v: g.weighted_degree(v) for v in g.node_ids}
    q = 0.0
    for i in g.node_ids:
        for j in g.node_ids:
            if partition[i] != partition[j]:
                continue
            a_ij = g.neighbors(i).get(j, 0) if i != j else 0
            q += a_ij - deg[i] * deg[j] / (2.0 * m)
    return q / (2.0 * m)


def set_partitions(items: list[str]):
    """Every partition of ``items`` into non-empty blocks."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [part[i] + [first]] + part[i + 1 :]
        yield part + [[first]]


def best_partition_modularity(g: CoocGraph, max_blocks: int | None = None) -> float:
    """Maximum modularity over all partitions (optionally capped block count)."""
    best = float("-inf")
    for part in set_partitions(list(g.node_ids)):
        if max_blocks is not None and len(part) > max_blocks:
            continue
        assignment = {v: i for i, block in enumerate(part) for v in block}
        q = brute_modularity(g, assignment)
        if q > best:
            best = q
    return best


def brute_cooccurrence_weights(memberships: list[list[int]]) -> dict[tuple[int, int], int]:
    """Recount per-sentence unordered pairs of distinct cluster indices."""
    weights: dict[tuple[int, int], int] = {}
    for occ in memberships:
        present = sorted(set(occ))
        for a, b in itertools.combinations(present, 2):
            weights[(a, b)] = weights.get((a, b), 0) + 1
    return weights
