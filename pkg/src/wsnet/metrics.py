"""Network properties: distances, transitivity, component statistics, and a
seeded random-graph baseline.

Average distance is the mean shortest-path length over ordered node pairs for
which a path exists; unconnected pairs are simply left out, and the value is
undefined (``None``) when no pair is connected. Directed networks measure
directed paths by default.

Transitivity comes in two flavors, both computed on the undirected underlying
graph: the global coefficient (three times the triangle count over the number
of connected triples) and the mean local clustering coefficient over nodes of
degree at least two. Both are 0 when no node has two neighbors.

The random baseline draws graphs uniformly among simple graphs with exactly
the requested node and link counts, so measured values can be compared
against a null model of the same size.
"""

from __future__ import annotations

import itertools
import random
import statistics
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .network import SimilarityNetwork, components, trim


# ---------------------------------------------------------------------------
# Integer-indexed graph internals (shared by network metrics and the baseline)


def _indexed_adjacency(network: SimilarityNetwork, directed: bool) -> list[list[int]]:
    order = {node: i for i, node in enumerate(sorted(network.nodes))}
    adjacency: list[set[int]] = [set() for _ in order]
    for source, target in network.links:
        s, t = order[source], order[target]
        adjacency[s].add(t)
        if not directed:
            adjacency[t].add(s)
    return [sorted(neighbors) for neighbors in adjacency]


def _neighbor_sets(network: SimilarityNetwork) -> list[frozenset[int]]:
    """Undirected underlying simple graph as neighbor sets."""
    order = {node: i for i, node in enumerate(sorted(network.nodes))}
    adjacency: list[set[int]] = [set() for _ in order]
    for source, target in network.links:
        s, t = order[source], order[target]
        adjacency[s].add(t)
        adjacency[t].add(s)
    return [frozenset(neighbors) for neighbors in adjacency]


def _distance_sum(adjacency: Sequence[Sequence[int]]) -> tuple[int, int]:
    """(sum of shortest-path lengths, number of connected ordered pairs)."""
    n = len(adjacency)
    total = 0
    pairs = 0
    for source in range(n):
        distance = [-1] * n
        distance[source] = 0
        queue = deque([source])
        while queue:
            node = queue.popleft()
            d = distance[node] + 1
            for neighbor in adjacency[node]:
                if distance[neighbor] < 0:
                    distance[neighbor] = d
                    total += d
                    pairs += 1
                    queue.append(neighbor)
    return total, pairs


def _transitivity_global(neighbor_sets: Sequence[frozenset[int]]) -> float:
    triples = sum(len(nbrs) * (len(nbrs) - 1) // 2 for nbrs in neighbor_sets)
    if triples == 0:
        return 0.0
    closed = 0
    for u, nbrs in enumerate(neighbor_sets):
        for v in nbrs:
            if v > u:
                closed += len(nbrs & neighbor_sets[v])
    return closed / triples


def _triangle_count(neighbor_sets: Sequence[frozenset[int]]) -> int:
    closed = 0
    for u, nbrs in enumerate(neighbor_sets):
        for v in nbrs:
            if v > u:
                closed += len(nbrs & neighbor_sets[v])
    return closed // 3


def _transitivity_local_mean(neighbor_sets: Sequence[frozenset[int]]) -> float:
    coefficients = []
    for nbrs in neighbor_sets:
        degree = len(nbrs)
        if degree < 2:
            continue
        among = sum(len(neighbor_sets[v] & nbrs) for v in nbrs)
        coefficients.append(among / (degree * (degree - 1)))
    return statistics.fmean(coefficients) if coefficients else 0.0


# ---------------------------------------------------------------------------
# Public metrics over similarity networks


def average_distance(network: SimilarityNetwork, as_undirected: bool = False) -> float | None:
    """Mean shortest-path length over connected ordered pairs, else ``None``.

    ``as_undirected`` forces undirected paths on a directed network, for
    reconciliation against undirected readings.
    """
    directed = network.directed and not as_undirected
    total, pairs = _distance_sum(_indexed_adjacency(network, directed))
    return total / pairs if pairs else None


def transitivity_global(network: SimilarityNetwork) -> float:
    return _transitivity_global(_neighbor_sets(network))


def transitivity_local_mean(network: SimilarityNetwork) -> float:
    return _transitivity_local_mean(_neighbor_sets(network))


def triangle_count(network: SimilarityNetwork) -> int:
    return _triangle_count(_neighbor_sets(network))


def component_stats(network: SimilarityNetwork) -> list[tuple[int, int]]:
    """(node count, link count) per community, in ranked community order."""
    return [(len(c.members), c.internal_links) for c in components(network)]


def coverage_curve(network: SimilarityNetwork) -> list[tuple[int, float, float]]:
    """Cumulative (k, node fraction, link fraction) over ranked communities.

    Fractions are relative to the given network; an all-isolated network with
    zero links counts its link coverage as complete.
    """
    total_nodes = len(network.nodes)
    total_links = len(network.links)
    if total_nodes == 0:
        return []
    curve = []
    nodes_seen = 0
    links_seen = 0
    for community in components(network):
        nodes_seen += len(community.members)
        links_seen += community.internal_links
        curve.append(
            (
                len(curve) + 1,
                nodes_seen / total_nodes,
                links_seen / total_links if total_links else 1.0,
            )
        )
    return curve


def topk_coverage(network: SimilarityNetwork, threshold: float) -> int:
    """Smallest k whose first k communities reach the threshold on both nodes
    and links. 0 for an empty network."""
    if not 0 < threshold <= 1:
        raise ValueError(f"threshold must be in (0, 1], got {threshold}")
    for k, node_fraction, link_fraction in coverage_curve(network):
        if node_fraction >= threshold and link_fraction >= threshold:
            return k
    return 0


# ---------------------------------------------------------------------------
# Uniform random-graph baseline


class InfeasibleGraph(ValueError):
    """Requested more links than a simple graph of that size can hold."""


@dataclass(frozen=True)
class ErBaseline:
    nodes: int
    links: int
    replicates: int
    seed: int
    average_distance_mean: float | None
    average_distance_std: float | None
    transitivity_mean: float
    transitivity_std: float


def er_baseline(nodes: int, links: int, replicates: int = 100, seed: int = 0) -> ErBaseline:
    """Estimate average distance and transitivity of same-sized random graphs.

    Each replicate samples exactly ``links`` distinct node pairs, uniformly,
    from a seeded generator; identical arguments give identical results.
    Standard deviations are population deviations across replicates.
    """
    if nodes < 0:
        raise ValueError("nodes must be non-negative")
    if replicates < 1:
        raise ValueError("replicates must be at least 1")
    max_links = nodes * (nodes - 1) // 2
    if links > max_links:
        raise InfeasibleGraph(
            f"{links} links do not fit in a simple graph on {nodes} nodes (max {max_links})"
        )
    rng = random.Random(seed)
    all_pairs = list(itertools.combinations(range(nodes), 2))
    distances = []
    transitivities = []
    for _ in range(replicates):
        adjacency: list[set[int]] = [set() for _ in range(nodes)]
        for u, v in rng.sample(all_pairs, links):
            adjacency[u].add(v)
            adjacency[v].add(u)
        neighbor_sets = [frozenset(nbrs) for nbrs in adjacency]
        total, pairs = _distance_sum([sorted(nbrs) for nbrs in adjacency])
        if pairs:
            distances.append(total / pairs)
        transitivities.append(_transitivity_global(neighbor_sets))
    return ErBaseline(
        nodes=nodes,
        links=links,
        replicates=replicates,
        seed=seed,
        average_distance_mean=statistics.fmean(distances) if distances else None,
        average_distance_std=statistics.pstdev(distances) if distances else None,
        transitivity_mean=statistics.fmean(transitivities),
        transitivity_std=statistics.pstdev(transitivities),
    )


# ---------------------------------------------------------------------------
# Aggregate report


@dataclass(frozen=True)
class NetworkReport:
    """All structural properties of one similarity network.

    Everything except ``isolated_nodes`` is measured on the trimmed network.
    """

    isolated_nodes: int
    trimmed_nodes: int
    components: int
    links: int
    average_distance: float | None
    transitivity_global: float
    transitivity_local_mean: float
    largest_component_nodes: int
    largest_component_links: int
    topk_coverage: tuple[tuple[int, float, float], ...]


def full_report(network: SimilarityNetwork) -> NetworkReport:
    trimmed = trim(network)
    stats = component_stats(trimmed)
    largest = stats[0] if stats else (0, 0)
    return NetworkReport(
        isolated_nodes=len(network.nodes) - len(trimmed.nodes),
        trimmed_nodes=len(trimmed.nodes),
        components=len(stats),
        links=len(trimmed.links),
        average_distance=average_distance(trimmed),
        transitivity_global=transitivity_global(trimmed),
        transitivity_local_mean=transitivity_local_mean(trimmed),
        largest_component_nodes=largest[0],
        largest_component_links=largest[1],
        topk_coverage=tuple(coverage_curve(trimmed)),
    )
