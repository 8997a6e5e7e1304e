"""Construction of sub-gadgets and gadgets with their input labels."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from ..graph import Endpoint, HalfEdge, Labeling, PortedMultigraph, bfs_distances
from .labels import CENTER, LCHILD, LEFT, NOPORT, PARENT, RCHILD, RIGHT, UP, GHalf, GNode, down, palette_size


class GadgetError(ValueError):
    pass


class GadgetSpec(NamedTuple):
    delta: int
    heights: tuple

    @classmethod
    def uniform(cls, delta: int, h: int) -> "GadgetSpec":
        return cls(delta, (h,) * delta)

    def validate(self):
        if self.delta < 1:
            raise GadgetError("a gadget needs at least one sub-gadget")
        if len(self.heights) != self.delta:
            raise GadgetError(f"expected {self.delta} heights, got {len(self.heights)}")
        if any(h < 1 for h in self.heights):
            raise GadgetError("sub-gadget heights must be at least 1")

    @property
    def size(self) -> int:
        return sum(2**h - 1 for h in self.heights) + 1


class Fragment(NamedTuple):
    """A sub-gadget before ids are assigned: coordinates and labeled edges."""

    index: int
    height: int
    nodes: list  # (level, x) in level-major order
    edges: list  # ((coord, label), (coord, label))
    port: tuple


def build_subgadget(h: int, index: int) -> Fragment:
    if h < 1 or index < 1:
        raise GadgetError(f"invalid sub-gadget parameters h={h}, index={index}")
    nodes = [(l, x) for l in range(h) for x in range(2**l)]
    edges = []
    for l, x in nodes:
        if l > 0:
            child_label = LCHILD if x % 2 == 0 else RCHILD
            edges.append((((l, x), PARENT), ((l - 1, x // 2), child_label)))
        if x + 1 < 2**l:
            edges.append((((l, x), RIGHT), ((l, x + 1), LEFT)))
    return Fragment(index, h, nodes, edges, (h - 1, 2 ** (h - 1) - 1))


@dataclass
class Gadget:
    spec: GadgetSpec
    graph: PortedMultigraph
    labels: Labeling
    coords: dict  # node id -> (index, level, x); the center maps to (0, -1, 0)
    center: int
    ports: dict  # port index -> node id

    @property
    def ids(self) -> list[int]:
        return self.graph.nodes()


def distance2_coloring(g: PortedMultigraph) -> dict[int, int]:
    """Greedy coloring in id order where nodes within distance 2 get distinct colors."""
    color: dict[int, int] = {}
    for v in g.nodes():
        near = bfs_distances(g, v, limit=2)
        used = {color[w] for w in near if w in color and w != v}
        c = 1
        while c in used:
            c += 1
        color[v] = c
    return color


def build_gadget(spec: GadgetSpec, first_id: int = 1) -> Gadget:
    spec = GadgetSpec(spec.delta, tuple(spec.heights))
    spec.validate()
    center = first_id
    ids: dict[tuple, int] = {}
    nxt = first_id + 1
    frags = []
    for i, h in enumerate(spec.heights, start=1):
        frag = build_subgadget(h, i)
        frags.append(frag)
        for c in frag.nodes:
            ids[(i, *c)] = nxt
            nxt += 1
    degree = {center: 0}
    degree.update({v: 0 for v in ids.values()})
    edges = {}
    half_label = {}

    def add(a: int, la: str, b: int, lb: str):
        degree[a] += 1
        degree[b] += 1
        k = len(edges)
        edges[k] = (Endpoint(a, degree[a]), Endpoint(b, degree[b]))
        half_label[HalfEdge(k, 0)] = la
        half_label[HalfEdge(k, 1)] = lb

    for frag in frags:
        add(center, down(frag.index), ids[(frag.index, 0, 0)], UP)
    for frag in frags:
        for (ca, la), (cb, lb) in frag.edges:
            add(ids[(frag.index, *ca)], la, ids[(frag.index, *cb)], lb)
    g = PortedMultigraph(degree, edges)
    col = distance2_coloring(g)
    if max(col.values()) > palette_size(spec.delta):
        raise GadgetError("coloring exceeded the palette")  # cannot happen for degree <= max(delta, 5)
    ports = {f.index: ids[(f.index, *f.port)] for f in frags}
    port_of_node = {v: i for i, v in ports.items()}
    nodes = {center: GNode(CENTER, NOPORT, col[center])}
    coords = {center: (0, -1, 0)}
    for (i, l, x), v in ids.items():
        nodes[v] = GNode(i, port_of_node.get(v, NOPORT), col[v])
        coords[v] = (i, l, x)
    halves = {h: GHalf(lab, col[g.node_of(h)]) for h, lab in half_label.items()}
    labels = Labeling(nodes, {k: None for k in edges}, halves)
    return Gadget(spec, g, labels, coords, center, ports)
