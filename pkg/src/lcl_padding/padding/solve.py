"""Solving the lifted problem: gadget proofs, port statuses, and simulation of a base solver
on the virtual graph obtained by contracting valid gadgets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from ..gadget.algorithm import psi_g_transform, v_outputs
from ..gadget.check import GadgetIndex, node_violations
from ..graph import Endpoint, HalfEdge, Labeling, PortedMultigraph, View, ball, bfs_distances
from ..local import LocalAlgorithm, RandomTape, SolverFailure, StarOutput, run
from ..nelcl import NeLclProblem
from .labels import (EPS, GAD_EDGE, NO_PORT_ERR, PORT_EDGE, PORT_ERR1, PORT_ERR2, PPNodeOut, SigmaList,
                     canonical_list, is_err)
from .pad import gadget_view

PHANTOM_BASE = 2**40  # stand-in endpoint ids (plus the PortEdge index) for partners with several PortEdges


@dataclass
class GadgetResult:
    nodes: list
    valid: bool
    psi: Labeling  # labels of the gadget error problem on the GadEdge-only subgraph


class VirtualGraph(NamedTuple):
    graph: PortedMultigraph
    inputs: Labeling
    members: dict  # virtual node -> sorted concrete nodes of its gadget
    port_map: dict  # virtual node -> {virtual port: gadget port index}
    phantoms: dict  # phantom id -> concrete partner port node


class PaddingContext:
    """Everything about gadgets, ports and the virtual graph derivable from a (possibly partial) graph."""

    def __init__(self, g: PortedMultigraph, inputs: Labeling, base: NeLclProblem, delta: int,
                 cache: dict | None = None):
        self.g, self.inputs, self.base, self.delta = g, inputs, base, delta
        self.cache = {} if cache is None else cache
        self.comps = g.components(edge_filter=lambda e: inputs.edges[e].kind == GAD_EDGE)
        self.comp_of = {v: i for i, c in enumerate(self.comps) for v in c}
        self._status: dict = {}

    # -- gadgets -------------------------------------------------------------

    def complete(self, ci: int) -> bool:
        return all(self.g.is_complete(v) for v in self.comps[ci])

    def result(self, ci: int) -> GadgetResult | None:
        """V's outcome on a fully visible gadget component, else None."""
        if not self.complete(ci):
            return None
        nodes = self.comps[ci]
        key = tuple(nodes)
        if key not in self.cache:
            sub, lab = gadget_view(self.g, self.inputs, nodes)
            idx = GadgetIndex(sub, lab, self.delta)
            errors = {v for v in nodes if node_violations(idx, v)}
            outs = v_outputs(sub, lab, self.delta, idx, errors)
            psi = psi_g_transform(sub, lab, self.delta, outs, idx)
            self.cache[key] = GadgetResult(nodes, not errors, psi)
        return self.cache[key]

    def port_edges(self, v: int) -> list[HalfEdge]:
        return [h for h in self.g.ports(v) if self.inputs.edges[h.edge].kind == PORT_EDGE]

    def status(self, v: int) -> str | None:
        if v in self._status:
            return self._status[v]
        res = self._compute_status(v)
        self._status[v] = res
        return res

    def _compute_status(self, v: int) -> str | None:
        if self.inputs.nodes[v].gad.port == 0:
            return NO_PORT_ERR
        if not self.g.is_complete(v):
            return None
        pe = self.port_edges(v)
        if len(pe) != 1:
            return PORT_ERR2
        u = self.g.neighbor(pe[0])
        if self.inputs.nodes[u].gad.port == 0:
            return PORT_ERR1
        mine, theirs = self.result(self.comp_of[v]), self.result(self.comp_of[u])
        if mine is None or theirs is None:
            return None
        return NO_PORT_ERR if mine.valid and theirs.valid else PORT_ERR1

    def port_nodes(self, ci: int) -> dict[int, int]:
        return {self.inputs.nodes[v].gad.port: v for v in self.comps[ci] if self.inputs.nodes[v].gad.port}

    def port_set(self, ci: int) -> frozenset | None:
        res = self.result(ci)
        if res is None or not res.valid:
            return None
        s = set()
        for i, v in self.port_nodes(ci).items():
            st = self.status(v)
            if st is None:
                return None
            if st == NO_PORT_ERR:
                s.add(i)
        return frozenset(s)

    def input_part(self, ci: int) -> tuple | None:
        """(S, iv, ie, ib) of a settled valid gadget."""
        S = self.port_set(ci)
        if S is None:
            return None
        bi = self.base.inputs
        ports = self.port_nodes(ci)
        iv = self.inputs.nodes[ports[1]].pi if 1 in ports else bi.v.first()
        ie, ib = [bi.e.first()] * self.delta, [bi.b.first()] * self.delta
        for i in S:
            h = self.port_edges(ports[i])[0]
            ie[i - 1] = self.inputs.edges[h.edge].pi
            ib[i - 1] = self.inputs.halves[h].pi
        return S, iv, tuple(ie), tuple(ib)

    # -- virtual graph ---------------------------------------------------------

    def virtual_graph(self) -> VirtualGraph:
        """Contract settled valid gadgets; edges towards unsettled gadgets are left out (partial graph)."""
        bi = self.base.inputs
        info = {}
        for ci in range(len(self.comps)):
            part = self.input_part(ci)
            if part is not None:
                info[ci] = part
        vid = {ci: self.comps[ci][0] for ci in info}
        degrees, edges = {}, {}
        vin = Labeling()
        members, port_map, phantoms = {}, {}, {}
        for ci, (S, iv, ie, ib) in info.items():
            x = vid[ci]
            degrees[x] = len(S)
            vin.nodes[x] = iv
            members[x] = self.comps[ci]
            port_map[x] = {k: i for k, i in enumerate(sorted(S), start=1)}
        for ci, (S, iv, ie, ib) in info.items():
            x = vid[ci]
            ports = self.port_nodes(ci)
            for k, i in port_map[x].items():
                h = self.port_edges(ports[i])[0]
                t = self.g.twin(h)
                u = self.g.node_of(t)
                e = h.edge
                vin.edges[e] = self.inputs.edges[e].pi
                vin.halves[HalfEdge(e, h.side)] = self.inputs.halves[h].pi
                ends = [None, None]
                ends[h.side] = Endpoint(x, k)
                if self.status(u) == NO_PORT_ERR:
                    cu = self.comp_of[u]
                    if cu not in info:
                        vin.edges.pop(e, None)
                        vin.halves.pop(HalfEdge(e, h.side), None)
                        continue
                    y = vid[cu]
                    j = self.inputs.nodes[u].gad.port
                    kk = next(a for a, b in port_map[y].items() if b == j)
                    ends[t.side] = Endpoint(y, kk)
                else:  # partner port has several PortEdges: stand-in endpoint of degree one
                    p = PHANTOM_BASE + e
                    degrees[p] = 1
                    phantoms[p] = u
                    vin.nodes[p] = bi.v.first()
                    ends[t.side] = Endpoint(p, 1)
                vin.halves[HalfEdge(e, t.side)] = self.inputs.halves[t].pi
                edges[e] = tuple(ends)
        vg = PortedMultigraph(degrees, edges, partial=True)
        return VirtualGraph(vg, vin, members, port_map, phantoms)

    # -- outputs ---------------------------------------------------------------

    def list_label(self, ci: int, q: StarOutput | None) -> SigmaList:
        """Full list label of gadget ``ci`` given the base solver's output at its virtual node."""
        part = self.input_part(ci) if q is not None else None
        if part is None:
            return canonical_list(self.base, self.delta)
        S, iv, ie, ib = part
        bo = self.base.outputs
        oe, ob = [bo.e.first()] * self.delta, [bo.b.first()] * self.delta
        for k, i in enumerate(sorted(S), start=1):
            oe[i - 1] = q.edges[k]
            ob[i - 1] = q.halves[k]
        return SigmaList(S, iv, ie, ib, q.node, tuple(oe), tuple(ob))

    def star(self, v: int, lst: SigmaList) -> StarOutput:
        res = self.result(self.comp_of[v])
        node = PPNodeOut(lst, self.status(v), res.psi.nodes[v])
        edges, halves = {}, {}
        for h in self.g.ports(v):
            p = self.g.port_of(h)
            if self.inputs.edges[h.edge].kind == PORT_EDGE:
                edges[p], halves[p] = EPS, EPS
            else:
                edges[p], halves[p] = res.psi.edges[h.edge], res.psi.halves[h]
        return StarOutput(node, edges, halves)


def _merge(out: Labeling, g: PortedMultigraph, v: int, part: StarOutput):
    out.nodes[v] = part.node
    for p, x in part.edges.items():
        out.edges[g._ports[v][p].edge] = x
    for p, x in part.halves.items():
        out.halves[g._ports[v][p]] = x


def _virtual_star(vg: PortedMultigraph, q: Labeling, x: int) -> StarOutput:
    ports = vg._ports[x]
    return StarOutput(q.nodes[x], {k: q.edges[h.edge] for k, h in ports.items()},
                      {k: q.halves[h] for k, h in ports.items()})


def solve_pi_prime(g: PortedMultigraph, inputs: Labeling, base: NeLclProblem, delta: int,
                   inner: LocalAlgorithm, n: int | None = None, seed: int = 0) -> Labeling:
    """Centralized evaluation of the lifted solver: V per gadget, port statuses, and the
    base solver run on the whole virtual graph. Base-solver failures propagate."""
    n = g.n if n is None else n
    ctx = PaddingContext(g, inputs, base, delta)
    vgraph = ctx.virtual_graph()
    vg = PortedMultigraph(vgraph.graph.degrees, vgraph.graph.edges)  # complete by construction
    q = run(vg, vgraph.inputs, inner, seed=seed, delta=delta, n=n) if vg.n else Labeling()
    out = Labeling()
    for ci, comp in enumerate(ctx.comps):
        x = comp[0]
        lst = ctx.list_label(ci, _virtual_star(vg, q, x) if x in vg.degrees else None)
        for v in comp:
            _merge(out, g, v, ctx.star(v, lst))
    return out


def pi_prime_algorithm(base: NeLclProblem, delta: int, inner: LocalAlgorithm, radius=None) -> LocalAlgorithm:
    """Gather-and-compute form of the lifted solver.

    ``radius`` is an int or a function of n; by default the view is the whole
    graph. A node declares failure when its view does not contain everything
    the base solver's simulated view needs.
    """
    state = {"source": None, "cache": {}}

    def rule(view: View, n, _delta, tape: RandomTape):
        if view.source is None or view.source is not state["source"]:
            state["source"], state["cache"] = view.source, {}
        ctx = PaddingContext(view.graph, view.labels, base, delta, state["cache"])
        v = view.root
        ci = ctx.comp_of[v]
        res = ctx.result(ci)
        if res is None or ctx.status(v) is None:
            raise SolverFailure(f"gadget of node {v} not fully visible")
        if not res.valid:
            return ctx.star(v, canonical_list(base, delta))
        if ctx.port_set(ci) is None:
            raise SolverFailure(f"ports of the gadget of node {v} not settled")
        vgraph = ctx.virtual_graph()
        vg = vgraph.graph
        x = ctx.comps[ci][0]
        r = inner.radius(n)
        dist = bfs_distances(vg, x, limit=r)
        if any(d < r and not vg.is_complete(w) for w, d in dist.items()):
            raise SolverFailure(f"virtual view of node {v} incomplete at radius {r}")
        q = inner.rule(ball(vg, vgraph.inputs, x, r), n, delta, RandomTape(tape.seed, x))
        return ctx.star(v, ctx.list_label(ci, q))

    if radius is None:
        rad = lambda n: n
    elif callable(radius):
        rad = radius
    else:
        rad = lambda n, t=int(radius): t
    return LocalAlgorithm(f"pi-prime[{inner.name}]", rad, rule)


# -- reading a solution back ------------------------------------------------------------

def extract_virtual_solution(g: PortedMultigraph, inputs: Labeling, outputs: Labeling,
                             delta: int) -> tuple[PortedMultigraph, Labeling, Labeling, dict]:
    """Rebuild the base instance and its labeling from a lifted output.

    Valid gadgets are those whose nodes all carry ``GadOk``; each becomes a
    virtual node (id = smallest member) with ports given by its list label's
    port set, keeping only PortEdges whose both ends are listed. Returns the
    virtual graph, its inputs, its outputs, and virtual node -> members.
    """
    comps = g.components(edge_filter=lambda e: inputs.edges[e].kind == GAD_EDGE)
    valid = {}
    for comp in comps:
        if all(not is_err(outputs.nodes[v].psi) for v in comp):
            lsts = {outputs.nodes[v].lst for v in comp}
            if len(lsts) != 1:
                raise ValueError(f"gadget {comp[0]} carries inconsistent list labels")
            valid[comp[0]] = (comp, lsts.pop())
    owner = {v: x for x, (comp, _) in valid.items() for v in comp}
    used: dict[int, set] = {x: set() for x in valid}
    links = []
    for e, (a, b) in g.edges.items():
        if inputs.edges[e].kind != PORT_EDGE or a.node not in owner or b.node not in owner:
            continue
        x, y = owner[a.node], owner[b.node]
        i, j = inputs.nodes[a.node].gad.port, inputs.nodes[b.node].gad.port
        if i and j and i in valid[x][1].S and j in valid[y][1].S:
            links.append((e, x, i, y, j))
            used[x].add(i)
            used[y].add(j)
    order = {x: {i: k for k, i in enumerate(sorted(used[x]), start=1)} for x in valid}
    edges = {e: (Endpoint(x, order[x][i]), Endpoint(y, order[y][j])) for e, x, i, y, j in links}
    vg = PortedMultigraph({x: len(used[x]) for x in valid}, edges)
    vin, vout = Labeling(), Labeling()
    for x, (comp, lst) in valid.items():
        vin.nodes[x], vout.nodes[x] = lst.iv, lst.ov
    for e, x, i, y, j in links:
        lx, ly = valid[x][1], valid[y][1]
        vin.edges[e], vout.edges[e] = lx.ie[i - 1], lx.oe[i - 1]
        vin.halves[HalfEdge(e, 0)], vout.halves[HalfEdge(e, 0)] = lx.ib[i - 1], lx.ob[i - 1]
        vin.halves[HalfEdge(e, 1)], vout.halves[HalfEdge(e, 1)] = ly.ib[j - 1], ly.ob[j - 1]
    return vg, vin, vout, {x: comp for x, (comp, _) in valid.items()}
