"""Single-edit mutations of gadgets and proofs that a mutant is still a valid gadget."""

from __future__ import annotations

import itertools
from typing import NamedTuple

import networkx as nx
import numpy as np

from ..graph import Endpoint, HalfEdge, Labeling, PortedMultigraph, bfs_distances
from .build import Gadget, GadgetSpec, build_gadget
from .labels import GHalf, half_labels, palette_size

MUTATION_KINDS = ("delete-edge", "add-edge", "relabel-halfedge", "relabel-node", "swap-port", "recolor")
ISO_LIMIT = 40  # node count up to which isomorphism against all specs is attempted


def applicable_kinds(gadget: Gadget) -> tuple[str, ...]:
    if gadget.graph.max_degree() >= 2:
        return MUTATION_KINDS
    return tuple(k for k in MUTATION_KINDS if k != "swap-port")


class Mutant(NamedTuple):
    kind: str
    graph: PortedMultigraph
    labels: Labeling
    detail: str


def _rebuild(degrees: dict, ends: dict, halves: dict, nodes: dict) -> tuple[PortedMultigraph, Labeling]:
    """Build graph and labels from explicit endpoints, renumbering edges and ports densely."""
    order = sorted(ends)
    ports: dict[int, list] = {v: [] for v in degrees}
    for k in order:
        for side, (v, p) in enumerate(ends[k]):
            ports[v].append((p, k, side))
    newport = {}
    for v, lst in ports.items():
        for q, (_, k, side) in enumerate(sorted(lst), start=1):
            newport[(k, side)] = q
    edges, hl = {}, {}
    for i, k in enumerate(order):
        (a, _), (b, _) = ends[k]
        edges[i] = (Endpoint(a, newport[(k, 0)]), Endpoint(b, newport[(k, 1)]))
        hl[HalfEdge(i, 0)] = halves[HalfEdge(k, 0)]
        hl[HalfEdge(i, 1)] = halves[HalfEdge(k, 1)]
    g = PortedMultigraph({v: len(ports[v]) for v in degrees}, edges)
    return g, Labeling(dict(nodes), {i: None for i in edges}, hl)


def mutate_gadget(gadget: Gadget, kind: str, rng: np.random.Generator) -> Mutant:
    g, lab, delta = gadget.graph, gadget.labels, gadget.spec.delta
    nodes = dict(lab.nodes)
    halves = dict(lab.halves)
    ends = {k: tuple(e) for k, e in g.edges.items()}
    degrees = dict(g.degrees)
    ids = g.nodes()
    if kind == "delete-edge":
        k = int(rng.integers(len(ends)))
        del ends[k]
        del halves[HalfEdge(k, 0)], halves[HalfEdge(k, 1)]
        detail = f"deleted edge {k}"
    elif kind == "add-edge":
        u, v = (int(x) for x in rng.choice(ids, size=2))
        labs = half_labels(delta)
        la, lb = labs[int(rng.integers(len(labs)))], labs[int(rng.integers(len(labs)))]
        k = max(ends) + 1
        degrees[u] += 1
        degrees[v] += 1
        ends[k] = (Endpoint(u, degrees[u]), Endpoint(v, degrees[v]))
        halves[HalfEdge(k, 0)] = GHalf(la, nodes[u].color)
        halves[HalfEdge(k, 1)] = GHalf(lb, nodes[v].color)
        detail = f"added edge {u}:{la} - {v}:{lb}"
    elif kind == "relabel-halfedge":
        hs = g.half_edges()
        h = hs[int(rng.integers(len(hs)))]
        old = halves[h]
        choices = [x for x in half_labels(delta) if x != old.label]
        new = choices[int(rng.integers(len(choices)))]
        halves[h] = GHalf(new, old.color)
        detail = f"half-edge {tuple(h)}: {old.label} -> {new}"
    elif kind == "relabel-node":
        v = ids[int(rng.integers(len(ids)))]
        old = nodes[v]
        field = "index" if rng.integers(2) == 0 else "port"
        choices = [x for x in range(delta + 1) if x != getattr(old, field)]
        if not choices:
            field = "port" if field == "index" else "index"
            choices = [x for x in range(delta + 1) if x != getattr(old, field)]
        new = choices[int(rng.integers(len(choices)))]
        nodes[v] = old._replace(**{field: new})
        detail = f"node {v} {field}: {getattr(old, field)} -> {new}"
    elif kind == "swap-port":
        cand = [v for v in ids if g.degree(v) >= 2]
        if not cand:
            raise ValueError("no node has two ports to swap")
        v = cand[int(rng.integers(len(cand)))]
        p, q = (int(x) for x in rng.choice(np.arange(1, g.degree(v) + 1), size=2, replace=False))
        for k, (a, b) in list(ends.items()):
            ends[k] = tuple(Endpoint(x, {p: q, q: p}.get(y, y)) if x == v else Endpoint(x, y) for x, y in (a, b))
        detail = f"node {v}: swapped ports {p} and {q}"
    elif kind == "recolor":
        v = ids[int(rng.integers(len(ids)))]
        old = nodes[v].color
        choices = [c for c in range(1, palette_size(delta) + 1) if c != old]
        new = choices[int(rng.integers(len(choices)))]
        nodes[v] = nodes[v]._replace(color=new)
        for h in g.ports(v):
            halves[h] = halves[h]._replace(color=new)
        detail = f"node {v} color: {old} -> {new}"
    else:
        raise ValueError(f"unknown mutation kind {kind!r}")
    mg, ml = _rebuild(degrees, ends, halves, nodes)
    return Mutant(kind, mg, ml, detail)


# -- validity proofs -------------------------------------------------------------

def colors_proper(g: PortedMultigraph, labels: Labeling, delta: int) -> bool:
    top = palette_size(delta)
    for v in g.nodes():
        c = labels.nodes[v].color
        if not 1 <= c <= top or any(labels.halves[h].color != c for h in g.ports(v)):
            return False
        if any(w != v and labels.nodes[w].color == c for w in bfs_distances(g, v, limit=2)):
            return False
        if any(g.neighbor(h) == v for h in g.ports(v)):
            return False
    return True


def _structure(g: PortedMultigraph, labels: Labeling):
    """Labeled structure ignoring ports and colors, keyed by node id."""
    nodes = {v: (labels.nodes[v].index, labels.nodes[v].port) for v in g.nodes()}
    edges = sorted(tuple(sorted(((a.node, labels.halves[HalfEdge(i, 0)].label),
                                 (b.node, labels.halves[HalfEdge(i, 1)].label))))
                   for i, (a, b) in g.edges.items())
    return nodes, edges


def to_networkx(g: PortedMultigraph, labels: Labeling) -> nx.MultiDiGraph:
    """Directed multigraph with one arc per half-edge, labeled by the half-edge label."""
    d = nx.MultiDiGraph()
    for v in g.nodes():
        d.add_node(v, key=(labels.nodes[v].index, labels.nodes[v].port))
    for h in g.half_edges():
        d.add_edge(g.node_of(h), g.neighbor(h), label=labels.halves[h].label)
    return d


def specs_with_size(delta: int, n: int):
    for hs in itertools.product(range(1, n.bit_length() + 1), repeat=delta):
        spec = GadgetSpec(delta, hs)
        if spec.size == n:
            yield spec


def proven_valid(original: Gadget, g: PortedMultigraph, labels: Labeling) -> bool:
    """True when the mutant is demonstrably a valid gadget.

    Either its labeled structure equals the original's up to ports and colors,
    or (for small graphs) it is isomorphic to a built gadget of the same size;
    in both cases the coloring must additionally be a proper distance-2 coloring.
    """
    delta = original.spec.delta
    if not colors_proper(g, labels, delta):
        return False
    if set(g.nodes()) == set(original.graph.nodes()) and \
            _structure(g, labels) == _structure(original.graph, original.labels):
        return True
    if g.n > ISO_LIMIT:
        return False
    mine = to_networkx(g, labels)
    nm = nx.algorithms.isomorphism.categorical_node_match("key", None)
    em = nx.algorithms.isomorphism.categorical_multiedge_match("label", None)
    for spec in specs_with_size(delta, g.n):
        ref = build_gadget(spec)
        if nx.is_isomorphic(mine, to_networkx(ref.graph, ref.labels), node_match=nm, edge_match=em):
            return True
    return False
