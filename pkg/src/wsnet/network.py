"""Similarity networks: construction, trimming and community extraction.

Nodes are operation ids; a link is present iff the corresponding similarity
predicate holds for the underlying operations. Networks built from symmetric
kinds are undirected and store each link once under (min, max) ordering;
directed kinds store one arc per holding ordered pair, pointing from the
predicate's first argument to its second (for ``partial``, from the richer
operation to the poorer one; for ``excess``, from the base operation to the
one exceeding it). Self-loops are never created.

A community is simply a maximal connected subgraph; directed networks use
weak connectivity.
"""

from __future__ import annotations

import itertools
from collections import defaultdict, deque
from dataclasses import dataclass

from .model import Collection
from .similarity import PREDICATES, SimilarityKind, as_kind

Link = tuple[str, str]


def _canonical_link(a: str, b: str, directed: bool) -> Link:
    if directed or a <= b:
        return (a, b)
    return (b, a)


@dataclass(frozen=True)
class SimilarityNetwork:
    kind: SimilarityKind
    nodes: frozenset[str]
    links: frozenset[Link]

    @property
    def directed(self) -> bool:
        return self.kind.directed

    def undirected_adjacency(self) -> dict[str, set[str]]:
        """Neighbor sets ignoring arc direction; every node has an entry."""
        adjacency: dict[str, set[str]] = {node: set() for node in self.nodes}
        for source, target in self.links:
            adjacency[source].add(target)
            adjacency[target].add(source)
        return adjacency

    def directed_adjacency(self) -> dict[str, set[str]]:
        adjacency: dict[str, set[str]] = {node: set() for node in self.nodes}
        for source, target in self.links:
            adjacency[source].add(target)
        return adjacency

    def isolated(self) -> frozenset[str]:
        linked = {endpoint for link in self.links for endpoint in link}
        return frozenset(self.nodes - linked)


@dataclass(frozen=True)
class Community:
    """A maximal connected subgraph, ranked within its network."""

    id: int
    members: frozenset[str]
    internal_links: int


def build_network_bruteforce(collection: Collection, kind: "SimilarityKind | str") -> SimilarityNetwork:
    """Reference builder: evaluate the predicate over every ordered pair."""
    kind = as_kind(kind)
    predicate = PREDICATES[kind]
    ops = collection.operations
    links = set()
    for a in ops:
        for b in ops:
            if a.id != b.id and predicate(a, b):
                links.add(_canonical_link(a.id, b.id, kind.directed))
    return SimilarityNetwork(kind, frozenset(op.id for op in ops), frozenset(links))


def build_network(collection: Collection, kind: "SimilarityKind | str") -> SimilarityNetwork:
    """Build the similarity network of ``collection`` for one similarity kind.

    Candidate pairs are found through an index of operations grouped by their
    output-name set: equal-output kinds only compare within a group, while
    strict-containment kinds only compare groups whose output keys nest. The
    produced link set is identical to :func:`build_network_bruteforce`.
    """
    kind = as_kind(kind)
    groups: dict[frozenset[str], list] = defaultdict(list)
    for op in collection.operations:
        groups[op.outputs].append(op)

    links = set()
    if kind in (SimilarityKind.FULL, SimilarityKind.RELATION):
        want_overlap = kind is SimilarityKind.FULL
        for members in groups.values():
            for a, b in itertools.combinations(members, 2):
                if a.inputs.isdisjoint(b.inputs) != want_overlap:
                    links.add(_canonical_link(a.id, b.id, directed=False))
    else:
        keys = list(groups)
        for k1, k2 in itertools.permutations(keys, 2):
            if not k1 > k2:
                continue
            # k1 is a strict superset of k2: partial arcs run k1-group -> k2-group,
            # excess arcs run k2-group -> k1-group.
            for rich in groups[k1]:
                for poor in groups[k2]:
                    if kind is SimilarityKind.PARTIAL:
                        if not rich.inputs.isdisjoint(poor.inputs):
                            links.add((rich.id, poor.id))
                    else:
                        if poor.inputs >= rich.inputs:
                            links.add((poor.id, rich.id))
    return SimilarityNetwork(kind, frozenset(op.id for op in collection.operations), frozenset(links))


def trim(network: SimilarityNetwork) -> SimilarityNetwork:
    """Drop every isolated node; links are untouched. Idempotent."""
    linked = frozenset(endpoint for link in network.links for endpoint in link)
    return SimilarityNetwork(network.kind, linked, network.links)


def components(network: SimilarityNetwork) -> list[Community]:
    """Partition the nodes into maximal (weakly) connected subgraphs.

    Communities come back ranked: more members first, then more internal
    links, then smallest member id.
    """
    adjacency = network.undirected_adjacency()
    component_of: dict[str, int] = {}
    member_sets: list[set[str]] = []
    for start in network.nodes:
        if start in component_of:
            continue
        index = len(member_sets)
        members = {start}
        component_of[start] = index
        queue = deque([start])
        while queue:
            node = queue.popleft()
            for neighbor in adjacency[node]:
                if neighbor not in component_of:
                    component_of[neighbor] = index
                    members.add(neighbor)
                    queue.append(neighbor)
        member_sets.append(members)

    link_counts = [0] * len(member_sets)
    for source, _target in network.links:
        link_counts[component_of[source]] += 1

    ranked = sorted(
        zip(member_sets, link_counts),
        key=lambda pair: (-len(pair[0]), -pair[1], min(pair[0])),
    )
    return [
        Community(id=rank, members=frozenset(members), internal_links=count)
        for rank, (members, count) in enumerate(ranked)
    ]
