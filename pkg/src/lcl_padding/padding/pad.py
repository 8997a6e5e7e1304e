"""Padded graphs: every node of a base graph replaced by a gadget."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from ..graph import Endpoint, GraphError, HalfEdge, Labeling, PortedMultigraph
from ..gadget.build import GadgetSpec, build_gadget
from ..nelcl import NeLclProblem
from .labels import GAD_EDGE, PORT_EDGE, PORT_HALF_GAD, PPEdgeIn, PPHalfIn, PPNodeIn


@dataclass
class PaddedGraph:
    graph: PortedMultigraph
    inputs: Labeling
    delta: int
    base: PortedMultigraph
    gadgets: dict = field(default_factory=dict)  # base node -> Gadget (ids as placed)
    host: dict = field(default_factory=dict)  # padded node -> base node
    port_edges: dict = field(default_factory=dict)  # base edge -> padded edge

    def kind(self, e: int) -> str:
        return self.inputs.edges[e].kind


def _fillers(base: NeLclProblem | None):
    if base is None:
        return None, None, None
    return base.inputs.v.first(), base.inputs.e.first(), base.inputs.b.first()


def pad_graph(h: PortedMultigraph, specs: GadgetSpec | Mapping[int, GadgetSpec],
              base_inputs: Labeling | None = None, base: NeLclProblem | None = None,
              first_id: int = 1) -> PaddedGraph:
    """Replace node ``v`` of ``h`` by the gadget ``specs[v]`` and base edges by PortEdges.

    Base inputs go to every node of the gadget and to PortEdges and their
    half-edges; gadget-internal elements carry the base alphabet's first symbol.
    """
    if isinstance(specs, GadgetSpec):
        specs = {v: specs for v in h.nodes()}
    deltas = {specs[v].delta for v in h.nodes()}
    if len(deltas) > 1:
        raise GraphError("all gadgets of a padded graph must share the same delta")
    delta = deltas.pop() if deltas else 1
    for v in h.nodes():
        if h.degree(v) > delta:
            raise GraphError(f"base node {v} has degree {h.degree(v)} > delta {delta}")
    fv, fe, fb = _fillers(base)
    bin_ = base_inputs if base_inputs is not None else Labeling.constant(h, fv, fe, fb)
    degrees: dict[int, int] = {}
    edges: dict[int, tuple] = {}
    nodes_in, edges_in, halves_in = {}, {}, {}
    pg = PaddedGraph(None, None, delta, h)
    nxt = first_id
    for v in h.nodes():
        gad = build_gadget(specs[v], first_id=nxt)
        nxt += gad.graph.n
        pg.gadgets[v] = gad
        for u in gad.graph.nodes():
            degrees[u] = gad.graph.degree(u)
            pg.host[u] = v
            nodes_in[u] = PPNodeIn(bin_.nodes[v], gad.labels.nodes[u])
        for i, (a, b) in gad.graph.edges.items():
            k = len(edges)
            edges[k] = (a, b)
            edges_in[k] = PPEdgeIn(fe, GAD_EDGE)
            for side in (0, 1):
                halves_in[HalfEdge(k, side)] = PPHalfIn(fb, gad.labels.halves[HalfEdge(i, side)])
    for i, (a, b) in h.edges.items():
        ends = []
        for x in (a, b):
            u = pg.gadgets[x.node].ports[x.port]
            degrees[u] += 1
            ends.append(Endpoint(u, degrees[u]))
        k = len(edges)
        edges[k] = tuple(ends)
        pg.port_edges[i] = k
        edges_in[k] = PPEdgeIn(bin_.edges[i], PORT_EDGE)
        for side in (0, 1):
            halves_in[HalfEdge(k, side)] = PPHalfIn(bin_.halves[HalfEdge(i, side)], PORT_HALF_GAD)
    pg.graph = PortedMultigraph(degrees, edges)
    pg.inputs = Labeling(nodes_in, edges_in, halves_in)
    return pg


def gadget_view(g: PortedMultigraph, inputs: Labeling, nodes) -> tuple[PortedMultigraph, Labeling]:
    """The GadEdge-only subgraph on ``nodes`` with the gadget part of the inputs."""
    sub = g.subgraph(nodes, edge_filter=lambda e: inputs.edges[e].kind == GAD_EDGE, partial=True)
    lab = Labeling({v: inputs.nodes[v].gad for v in sub.nodes()}, {i: None for i in sub.edges},
                   {h: inputs.halves[h].gad for h in sub.half_edges()})
    return sub, lab
