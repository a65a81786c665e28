"""WAN topology and shortest-path routing.

Nodes are ordered by their position in ``Topology.nodes``; that order
breaks every tie between equal-cost routes, so routes (and the link
loads derived from them) are reproducible.
"""

from __future__ import annotations

import enum
import heapq
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union


class Unreachable(enum.Enum):
    UNREACHABLE = "unreachable"

    def __repr__(self):
        return "UNREACHABLE"


UNREACHABLE = Unreachable.UNREACHABLE

Distance = Union[float, Unreachable]


class TopologyError(ValueError):
    pass


class UnreachableError(LookupError):
    pass


@dataclass(frozen=True)
class Edge:
    a: str
    b: str
    length_km: float

    def __post_init__(self):
        if self.a == self.b:
            raise TopologyError(f"self-loop on {self.a}")
        if not self.length_km > 0:
            raise TopologyError(f"edge {self.a}-{self.b}: length must be > 0, got {self.length_km}")

    @property
    def key(self) -> frozenset:
        return frozenset((self.a, self.b))

    def other(self, node: str) -> str:
        return self.b if node == self.a else self.a

    def label(self, names: Optional[dict[str, str]] = None) -> str:
        names = names or {}
        return f"{names.get(self.a, self.a)}-{names.get(self.b, self.b)}"


@dataclass(frozen=True)
class Topology:
    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]
    components: tuple[tuple[str, ...], ...] = field(default=(), compare=False)
    _adjacency: dict = field(default_factory=dict, compare=False, repr=False)
    _index: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def connected(self) -> bool:
        return len(self.components) <= 1

    def index(self, node: str) -> int:
        return self._index[node]

    def neighbors(self, node: str) -> list[tuple[str, float]]:
        """(neighbor, length) pairs in node order."""
        return self._adjacency[node]

    def edge_between(self, a: str, b: str) -> Edge:
        for edge in self.edges:
            if edge.key == frozenset((a, b)):
                return edge
        raise KeyError(f"no edge {a}-{b}")

    def length(self, a: str, b: str) -> float:
        for n, w in self._adjacency[a]:
            if n == b:
                return w
        raise KeyError(f"no edge {a}-{b}")

    def with_edge(self, edge: Edge) -> "Topology":
        return build_topology(self.nodes, self.edges + (edge,))


def build_topology(nodes: Iterable[str], edges: Iterable[Edge]) -> Topology:
    nodes = tuple(nodes)
    edges = tuple(edges)
    index = {}
    for i, node in enumerate(nodes):
        if node in index:
            raise TopologyError(f"duplicate node {node}")
        index[node] = i
    seen = set()
    adjacency = {node: [] for node in nodes}
    for edge in edges:
        for end in (edge.a, edge.b):
            if end not in index:
                raise TopologyError(f"edge {edge.a}-{edge.b}: unknown endpoint {end}")
        if edge.key in seen:
            raise TopologyError(f"duplicate edge {edge.a}-{edge.b}")
        seen.add(edge.key)
        adjacency[edge.a].append((edge.b, edge.length_km))
        adjacency[edge.b].append((edge.a, edge.length_km))
    for node in nodes:
        adjacency[node].sort(key=lambda nw: index[nw[0]])

    components = []
    assigned = set()
    for start in nodes:
        if start in assigned:
            continue
        stack, members = [start], []
        assigned.add(start)
        while stack:
            node = stack.pop()
            members.append(node)
            for n, _ in adjacency[node]:
                if n not in assigned:
                    assigned.add(n)
                    stack.append(n)
        components.append(tuple(sorted(members, key=index.__getitem__)))
    return Topology(nodes, edges, tuple(components), adjacency, index)


@dataclass(frozen=True)
class ShortestPathResult:
    source: str
    dist: dict[str, Distance]
    pred: dict[str, str]


@dataclass(frozen=True)
class DistanceMatrix:
    order: tuple[str, ...]
    dist: dict[str, dict[str, Distance]]
    next: dict[str, dict[str, Optional[str]]]
    topology: Topology = field(repr=False, compare=False)

    def __getitem__(self, pair: tuple[str, str]) -> Distance:
        a, b = pair
        return self.dist[a][b]


def _precedes(topology: Topology, a: str, b: str) -> bool:
    return topology.index(a) < topology.index(b)


def dijkstra(topology: Topology, source: str) -> ShortestPathResult:
    """Single-source shortest paths with a binary heap.

    On an equal-cost alternative the predecessor with the lower node
    position wins, which makes ``pred`` the same canonical choice that
    :func:`floyd_warshall` settles on.
    """
    if source not in topology.nodes:
        raise KeyError(f"unknown source {source}")
    dist = {source: 0}
    pred = {}
    done = set()
    heap = [(0, topology.index(source), source)]
    while heap:
        d, _, node = heapq.heappop(heap)
        if node in done:
            continue
        done.add(node)
        for n, w in topology.neighbors(node):
            if n in done:
                continue
            candidate = d + w
            incumbent = dist.get(n)
            if incumbent is None or candidate < incumbent:
                dist[n] = candidate
                pred[n] = node
                heapq.heappush(heap, (candidate, topology.index(n), n))
            elif candidate == incumbent and _precedes(topology, node, pred[n]):
                pred[n] = node
    full = {node: dist.get(node, UNREACHABLE) for node in topology.nodes}
    return ShortestPathResult(source, full, pred)


def _add(x: Distance, y: Distance) -> Distance:
    if x is UNREACHABLE or y is UNREACHABLE:
        return UNREACHABLE
    return x + y


def _shorter(x: Distance, y: Distance) -> bool:
    """x < y where UNREACHABLE behaves as an unbounded distance."""
    if x is UNREACHABLE:
        return False
    return y is UNREACHABLE or x < y


def _initial_matrix(topology: Topology) -> dict[str, dict[str, Distance]]:
    a0 = {i: {j: UNREACHABLE for j in topology.nodes} for i in topology.nodes}
    for i in topology.nodes:
        a0[i][i] = 0
        for j, w in topology.neighbors(i):
            a0[i][j] = w
    return a0


def _canonical_next(topology: Topology, dist) -> dict[str, dict[str, Optional[str]]]:
    """First hop of the canonical route from i to j.

    Picks the lowest-positioned neighbour lying on some shortest route,
    so route reconstruction depends only on the distances and the node
    order, never on the order relaxations happened in.
    """
    nxt = {}
    for i in topology.nodes:
        row = {}
        for j in topology.nodes:
            if i == j:
                row[j] = j
                continue
            row[j] = None
            if dist[i][j] is UNREACHABLE:
                continue
            for n, w in topology.neighbors(i):
                if dist[n][j] is not UNREACHABLE and w + dist[n][j] == dist[i][j]:
                    row[j] = n
                    break
        nxt[i] = row
    return nxt


def floyd_warshall(topology: Topology) -> DistanceMatrix:
    nodes = topology.nodes
    dist = _initial_matrix(topology)
    nxt = {i: {j: (j if dist[i][j] is not UNREACHABLE else None) for j in nodes} for i in nodes}
    for k in nodes:
        row_k = dist[k]
        for i in nodes:
            d_ik = dist[i][k]
            if d_ik is UNREACHABLE:
                continue
            row_i = dist[i]
            for j in nodes:
                through_k = _add(d_ik, row_k[j])
                if _shorter(through_k, row_i[j]):
                    row_i[j] = through_k
                    nxt[i][j] = nxt[i][k]
    # Equal-cost routes: the recurrence keeps whichever it met first; settle
    # them on the canonical first hop instead.
    canonical = _canonical_next(topology, dist)
    return DistanceMatrix(nodes, dist, canonical, topology)


def brute_force_distances(topology: Topology) -> DistanceMatrix:
    """All-pairs distances by |V|-1 rounds of plain edge relaxation per source.

    No priority queue and no intermediate-node ordering; meant as a test
    oracle for small graphs.
    """
    nodes = topology.nodes
    dist = {}
    for s in nodes:
        d = {n: UNREACHABLE for n in nodes}
        d[s] = 0
        for _ in range(len(nodes) - 1):
            changed = False
            for edge in topology.edges:
                for u, v in ((edge.a, edge.b), (edge.b, edge.a)):
                    candidate = _add(d[u], edge.length_km)
                    if _shorter(candidate, d[v]):
                        d[v] = candidate
                        changed = True
            if not changed:
                break
        dist[s] = d
    return DistanceMatrix(nodes, dist, _canonical_next(topology, dist), topology)


def reconstruct_path(
    result: Union[ShortestPathResult, DistanceMatrix], origin: str, destination: str
) -> list[str]:
    """Node sequence of the route from ``origin`` to ``destination``.

    Routes are traced backwards from the destination so that a
    Dijkstra predecessor table and an all-pairs next-hop table give the
    same route for the same pair.
    """
    if isinstance(result, ShortestPathResult):
        if origin != result.source:
            raise ValueError(f"result is rooted at {result.source}, not {origin}")
        if destination not in result.dist:
            raise KeyError(f"unknown node {destination}")
        if result.dist[destination] is UNREACHABLE:
            raise UnreachableError(f"{destination} is unreachable from {origin}")
        path = [destination]
        while path[-1] != origin:
            path.append(result.pred[path[-1]])
        path.reverse()
        return path

    for node in (origin, destination):
        if node not in result.dist:
            raise KeyError(f"unknown node {node}")
    if result.dist[destination][origin] is UNREACHABLE:
        raise UnreachableError(f"{destination} is unreachable from {origin}")
    path = [destination]
    while path[-1] != origin:
        path.append(result.next[path[-1]][origin])
    path.reverse()
    return path


def path_length(topology: Topology, path: Sequence[str]) -> float:
    return sum(topology.length(a, b) for a, b in zip(path, path[1:]))


def path_edges(topology: Topology, path: Sequence[str]) -> list[Edge]:
    return [topology.edge_between(a, b) for a, b in zip(path, path[1:])]


def dijkstra_all(topology: Topology) -> DistanceMatrix:
    """All-pairs matrix assembled from one Dijkstra run per source."""
    runs = {s: dijkstra(topology, s) for s in topology.nodes}
    dist = {s: dict(r.dist) for s, r in runs.items()}
    # pred from source s at v is the first hop of the canonical route v -> s
    nxt = {
        v: {s: (v if s == v else runs[s].pred.get(v)) for s in topology.nodes}
        for v in topology.nodes
    }
    return DistanceMatrix(topology.nodes, dist, nxt, topology)
