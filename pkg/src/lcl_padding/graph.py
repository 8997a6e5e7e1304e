"""Port-numbered multigraphs, labelings, and radius-r views."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Mapping, NamedTuple


class GraphError(ValueError):
    """Raised when a graph or labeling violates its structural invariants."""


class Endpoint(NamedTuple):
    node: int
    port: int


class HalfEdge(NamedTuple):
    """One side of an edge. A self-loop has two distinct half-edges."""

    edge: int
    side: int


class PortedMultigraph:
    """Undirected multigraph with port numbers; self-loops and parallel edges allowed.

    ``edges`` maps an edge index to its two endpoints. Full graphs use indices
    ``0..m-1``; views keep the indices of the graph they were cut from.
    """

    def __init__(self, degrees: Mapping[int, int], edges: Mapping[int, tuple[Endpoint, Endpoint]],
                 partial: bool = False):
        self.degrees = dict(sorted(degrees.items()))
        self.edges = {i: (Endpoint(*a), Endpoint(*b)) for i, (a, b) in sorted(edges.items())}
        self.partial = partial
        self._ports: dict[int, dict[int, HalfEdge]] = {v: {} for v in self.degrees}
        for i, ends in self.edges.items():
            for side, (v, p) in enumerate(ends):
                if v not in self.degrees:
                    raise GraphError(f"edge {i} references unknown node {v}")
                if not 1 <= p <= self.degrees[v]:
                    raise GraphError(f"edge {i} uses port {p} of node {v} with degree {self.degrees[v]}")
                if p in self._ports[v]:
                    raise GraphError(f"port {p} of node {v} used twice")
                self._ports[v][p] = HalfEdge(i, side)
        if not partial:
            for v, d in self.degrees.items():
                if len(self._ports[v]) != d:
                    missing = sorted(set(range(1, d + 1)) - set(self._ports[v]))
                    raise GraphError(f"node {v} has unused ports {missing}")
        for v in self.degrees:
            if not isinstance(v, int) or v < 1:
                raise GraphError(f"node ids must be positive integers, got {v!r}")

    # -- basic access -------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def m(self) -> int:
        return len(self.edges)

    def nodes(self) -> list[int]:
        return list(self.degrees)

    def __contains__(self, v) -> bool:
        return v in self.degrees

    def degree(self, v: int) -> int:
        return self.degrees[v]

    def max_degree(self) -> int:
        return max(self.degrees.values(), default=0)

    def ports(self, v: int) -> list[HalfEdge]:
        """Visible half-edges of ``v`` in port order."""
        ps = self._ports[v]
        return [ps[p] for p in sorted(ps)]

    def port_of(self, h: HalfEdge) -> int:
        return self.edges[h.edge][h.side].port

    def node_of(self, h: HalfEdge) -> int:
        return self.edges[h.edge][h.side].node

    def twin(self, h: HalfEdge) -> HalfEdge:
        return HalfEdge(h.edge, 1 - h.side)

    def neighbor(self, h: HalfEdge) -> int:
        return self.edges[h.edge][1 - h.side].node

    def half_edges(self) -> list[HalfEdge]:
        return [HalfEdge(i, s) for i in self.edges for s in (0, 1)]

    def is_complete(self, v: int) -> bool:
        """True when every port of ``v`` is visible (always true for full graphs)."""
        return len(self._ports[v]) == self.degrees[v]

    def neighbors(self, v: int) -> Iterator[int]:
        for h in self.ports(v):
            yield self.neighbor(h)

    def is_self_loop(self, e: int) -> bool:
        a, b = self.edges[e]
        return a.node == b.node

    def __eq__(self, other):
        return (isinstance(other, PortedMultigraph) and self.degrees == other.degrees
                and self.edges == other.edges)

    def __repr__(self):
        return f"PortedMultigraph(n={self.n}, m={self.m})"

    # -- derived ------------------------------------------------------------

    def components(self, edge_filter=None) -> list[list[int]]:
        """Connected components (sorted node lists, ordered by smallest id)."""
        seen: set[int] = set()
        out = []
        for s in self.degrees:
            if s in seen:
                continue
            comp = []
            seen.add(s)
            dq = deque([s])
            while dq:
                v = dq.popleft()
                comp.append(v)
                for h in self.ports(v):
                    if edge_filter is not None and not edge_filter(h.edge):
                        continue
                    w = self.neighbor(h)
                    if w not in seen:
                        seen.add(w)
                        dq.append(w)
            out.append(sorted(comp))
        return out

    def subgraph(self, nodes: Iterable[int], edge_filter=None, partial=True) -> "PortedMultigraph":
        """Induced sub-multigraph, keeping ids, degrees, ports and edge indices."""
        keep = set(nodes)
        edges = {i: e for i, e in self.edges.items()
                 if e[0].node in keep and e[1].node in keep
                 and (edge_filter is None or edge_filter(i))}
        return PortedMultigraph({v: self.degrees[v] for v in keep}, edges, partial=partial)


def build_graph(nodes: int | Mapping[int, int] | Iterable[int],
                edges: Iterable[tuple[tuple[int, int], tuple[int, int]]],
                degrees: Mapping[int, int] | None = None) -> PortedMultigraph:
    """Validate and build a graph.

    ``nodes`` is either a count (ids ``1..n``), an iterable of ids, or a
    mapping id -> degree. Degrees default to the number of ports used.
    """
    edges = [(Endpoint(*a), Endpoint(*b)) for a, b in edges]
    if isinstance(nodes, int):
        ids = list(range(1, nodes + 1))
    elif isinstance(nodes, Mapping):
        ids = list(nodes)
        degrees = dict(nodes)
    else:
        ids = list(nodes)
    if len(set(ids)) != len(ids):
        raise GraphError("duplicate node id")
    if degrees is None:
        degrees = {v: 0 for v in ids}
        for a, b in edges:
            for v, p in (a, b):
                if v not in degrees:
                    raise GraphError(f"unknown node id {v}")
                degrees[v] = max(degrees[v], p)
    else:
        degrees = {v: degrees.get(v, 0) for v in ids}
    return PortedMultigraph(degrees, dict(enumerate(edges)))


def graph_from_pairs(n: int, pairs: Iterable[tuple[int, int]]) -> PortedMultigraph:
    """Build a graph on ids ``1..n`` assigning ports in order of appearance."""
    nxt = {v: 1 for v in range(1, n + 1)}
    edges = []
    for u, v in pairs:
        a = (u, nxt[u]); nxt[u] += 1
        b = (v, nxt[v]); nxt[v] += 1
        edges.append((a, b))
    return PortedMultigraph({v: nxt[v] - 1 for v in nxt}, dict(enumerate(edges)))


def cycle(n: int, first_id: int = 1) -> PortedMultigraph:
    """The n-cycle; n=1 is a self-loop and n=2 a pair of parallel edges."""
    ids = list(range(first_id, first_id + n))
    edges = [((ids[i], 2), (ids[(i + 1) % n], 1)) for i in range(n)]
    return PortedMultigraph({v: 2 for v in ids}, dict(enumerate(edges)))


def random_cyclic_graph(n: int, max_degree: int, rng, extra: int = 2) -> PortedMultigraph:
    """Random multigraph on ``1..n`` with degrees <= ``max_degree`` and a cycle in every component.

    One or two random cycles (a cycle of length 1 is a self-loop, of length 2 a
    double edge) are grown into trees with the remaining nodes; afterwards up
    to ``extra`` edges are added between nodes with spare degree.
    """
    if max_degree < 2:
        raise GraphError("a cycle needs max_degree >= 2")
    order = [int(x) + 1 for x in rng.permutation(n)]
    k = 1 if n < 4 or rng.random() < 0.5 else 2
    cuts = sorted(int(x) for x in rng.choice(range(1, n), size=k - 1, replace=False)) if k > 1 else []
    bounds = [0] + cuts + [n]
    pairs, deg = [], {v: 0 for v in range(1, n + 1)}
    for a, b in zip(bounds, bounds[1:]):
        size = b - a if max_degree == 2 else int(rng.integers(1, b - a + 1))  # degree 2 leaves no room for trees
        core = order[a:b][:size]
        for i, v in enumerate(core):
            w = core[(i + 1) % len(core)]
            pairs.append((v, w))
            deg[v] += 1
            deg[w] += 1
        tree = list(core)
        for v in order[a:b][len(core):]:
            free = [u for u in tree if deg[u] < max_degree]
            u = free[int(rng.integers(len(free)))]
            pairs.append((u, v))
            deg[u] += 1
            deg[v] += 1
            tree.append(v)
    for _ in range(extra):
        free = [v for v in deg if deg[v] < max_degree]
        if len(free) < 2:
            break
        u, v = (int(x) for x in rng.choice(free, size=2, replace=False))
        pairs.append((u, v))
        deg[u] += 1
        deg[v] += 1
    return graph_from_pairs(n, pairs)


@dataclass
class Labeling:
    """Labels on nodes, edges and half-edges (one symbol per element).

    Several conceptual labels on one element are packed into a tuple.
    """

    nodes: dict[int, Any] = field(default_factory=dict)
    edges: dict[int, Any] = field(default_factory=dict)
    halves: dict[HalfEdge, Any] = field(default_factory=dict)

    @classmethod
    def constant(cls, g: PortedMultigraph, v=None, e=None, b=None) -> "Labeling":
        return cls({x: v for x in g.degrees}, {i: e for i in g.edges},
                   {h: b for h in g.half_edges()})

    def restrict(self, g: PortedMultigraph) -> "Labeling":
        return Labeling({v: self.nodes[v] for v in g.degrees if v in self.nodes},
                        {i: self.edges[i] for i in g.edges if i in self.edges},
                        {h: self.halves[h] for h in g.half_edges() if h in self.halves})

    def update(self, other: "Labeling") -> None:
        self.nodes.update(other.nodes)
        self.edges.update(other.edges)
        self.halves.update(other.halves)

    def missing(self, g: PortedMultigraph) -> list[tuple[str, Any]]:
        out = [("node", v) for v in g.degrees if v not in self.nodes]
        out += [("edge", i) for i in g.edges if i not in self.edges]
        out += [("half", h) for h in g.half_edges() if h not in self.halves]
        return out

    def is_total(self, g: PortedMultigraph) -> bool:
        return not self.missing(g)

    def copy(self) -> "Labeling":
        return Labeling(dict(self.nodes), dict(self.edges), dict(self.halves))


@dataclass
class View:
    """What a node learns in ``radius`` rounds: the ball around ``root``."""

    root: int
    radius: int
    graph: PortedMultigraph
    labels: Labeling
    dist: dict[int, int]
    source: Any = None  # token of the graph the view was cut from; used only for memoization

    @property
    def frontier(self) -> set[int]:
        return {v for v, d in self.dist.items() if d == self.radius}

    def knows_everything(self) -> bool:
        """True when the view is a whole connected component."""
        return all(self.graph.is_complete(v) for v in self.graph.degrees)


def bfs_distances(g: PortedMultigraph, root: int, limit: int | None = None,
                  edge_filter=None) -> dict[int, int]:
    if root not in g.degrees:
        raise GraphError(f"unknown node {root}")
    dist = {root: 0}
    dq = deque([root])
    while dq:
        v = dq.popleft()
        if limit is not None and dist[v] >= limit:
            continue
        for h in g.ports(v):
            if edge_filter is not None and not edge_filter(h.edge):
                continue
            w = g.neighbor(h)
            if w not in dist:
                dist[w] = dist[v] + 1
                dq.append(w)
    return dist


def ball(g: PortedMultigraph, labels: Labeling | None, root: int, r: int, source=None) -> View:
    """Radius-``r`` view of ``root``: induced sub-multigraph on nodes within ``r`` hops."""
    if r < 0:
        raise ValueError("radius must be nonnegative")
    dist = bfs_distances(g, root, limit=r)
    # an edge is learned only through an endpoint strictly inside the ball
    sub = g.subgraph(dist, edge_filter=lambda i: min(dist[e.node] for e in g.edges[i]) < r)
    lab = labels.restrict(sub) if labels is not None else Labeling()
    return View(root, r, sub, lab, dist, source=source)


def hop_distance(g: PortedMultigraph, u: int, v: int) -> int | None:
    """Shortest hop count, or None when ``u`` and ``v`` are in different components."""
    if v not in g.degrees:
        raise GraphError(f"unknown node {v}")
    return bfs_distances(g, u).get(v)
