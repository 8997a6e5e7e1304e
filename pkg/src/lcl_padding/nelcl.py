"""Node-edge-checkable LCL problems, their verifier, and sinkless orientation."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Any, Callable, NamedTuple

from .alphabet import UNIT, Alphabet, Finite
from .graph import HalfEdge, Labeling, PortedMultigraph, View
from .local import LocalAlgorithm, SolverFailure, star_output


class Sigma(NamedTuple):
    """Alphabets for nodes, edges and half-edges."""

    v: Alphabet
    e: Alphabet
    b: Alphabet


UNIT_SIGMA = Sigma(UNIT, UNIT, UNIT)


class Slot(NamedTuple):
    """One incident edge as seen from a node: edge input/output and own half-edge input/output."""

    ein: Any
    eout: Any
    bin: Any
    bout: Any


class NodeStar(NamedTuple):
    """Everything a node constraint may look at, slots in port order."""

    vin: Any
    vout: Any
    slots: tuple


class EdgeConfig(NamedTuple):
    """Labels on ``{u, v, e, (u,e), (v,e)}``."""

    uin: Any
    uout: Any
    vin: Any
    vout: Any
    ein: Any
    eout: Any
    buin: Any
    buout: Any
    bvin: Any
    bvout: Any

    def flipped(self) -> "EdgeConfig":
        return EdgeConfig(self.vin, self.vout, self.uin, self.uout, self.ein, self.eout,
                          self.bvin, self.bvout, self.buin, self.buout)


class Violation(NamedTuple):
    kind: str  # "node" or "edge"
    location: int
    constraint: str


class LabelingError(ValueError):
    """A labeling is partial or uses symbols outside the declared alphabet."""


@dataclass(frozen=True)
class NeLclProblem:
    """An ne-LCL given by alphabets and two predicates.

    ``node_ok`` and ``edge_ok`` return the ids of the failed constraints
    (an empty list means satisfied).
    """

    name: str
    inputs: Sigma
    outputs: Sigma
    node_ok: Callable[[NodeStar], list]
    edge_ok: Callable[[EdgeConfig], list]
    params: tuple = ()

    def verify(self, g: PortedMultigraph, inputs: Labeling | None, outputs: Labeling) -> list[Violation]:
        return verify(self, g, inputs, outputs)

    def alphabet_size(self) -> int:
        return max(a.size for a in (*self.inputs, *self.outputs))


def _check_layer(lab: Labeling, g: PortedMultigraph, sig: Sigma, what: str):
    miss = lab.missing(g)
    if miss:
        raise LabelingError(f"{what} labeling is partial, e.g. missing {miss[0]}")
    for table, alpha, where in ((lab.nodes, sig.v, "node"), (lab.edges, sig.e, "edge"),
                                (lab.halves, sig.b, "half-edge")):
        for key, x in table.items():
            if x not in alpha:
                raise LabelingError(f"{what} label {x!r} on {where} {key} is outside the alphabet")


def node_star(g: PortedMultigraph, v: int, inputs: Labeling, outputs: Labeling) -> NodeStar:
    slots = tuple(Slot(inputs.edges[h.edge], outputs.edges[h.edge], inputs.halves[h], outputs.halves[h])
                  for h in g.ports(v))
    return NodeStar(inputs.nodes[v], outputs.nodes[v], slots)


def edge_config(g: PortedMultigraph, i: int, inputs: Labeling, outputs: Labeling) -> EdgeConfig:
    a, b = g.edges[i]
    ha, hb = HalfEdge(i, 0), HalfEdge(i, 1)
    return EdgeConfig(inputs.nodes[a.node], outputs.nodes[a.node], inputs.nodes[b.node], outputs.nodes[b.node],
                      inputs.edges[i], outputs.edges[i], inputs.halves[ha], outputs.halves[ha],
                      inputs.halves[hb], outputs.halves[hb])


def verify(problem: NeLclProblem, g: PortedMultigraph, inputs: Labeling | None,
           outputs: Labeling) -> list[Violation]:
    """All node and edge violations; the empty list means the output is accepted."""
    if inputs is None:
        inputs = Labeling.constant(g)
    _check_layer(inputs, g, problem.inputs, "input")
    _check_layer(outputs, g, problem.outputs, "output")
    out = []
    for v in g.nodes():
        for c in problem.node_ok(node_star(g, v, inputs, outputs)):
            out.append(Violation("node", v, c))
    for i in g.edges:
        for c in problem.edge_ok(edge_config(g, i, inputs, outputs)):
            out.append(Violation("edge", i, c))
    return out


class CapExceeded(RuntimeError):
    pass


def enumerate_solutions(problem: NeLclProblem, g: PortedMultigraph, inputs: Labeling | None = None,
                        cap: int = 10**7, keep: int | None = None) -> tuple[int, list[Labeling]]:
    """Exact number of accepting output labelings, by exhaustive backtracking.

    ``cap`` bounds the raw label space ``|Sigma_V|^n |Sigma_E|^m |Sigma_B|^(2m)``.
    A node is checked as soon as its star is labeled, an edge as soon as its
    five elements are. ``keep`` limits how many solutions are returned.
    """
    if inputs is None:
        inputs = Labeling.constant(g)
    sv, se, sb = (list(a) for a in problem.outputs)
    space = len(sv) ** g.n * len(se) ** g.m * len(sb) ** (2 * g.m)
    if space > cap:
        raise CapExceeded(f"label space {space} exceeds cap {cap}")

    # variables in order: per node, the node then its half-edges and not yet seen edges
    order: list[tuple[str, Any]] = []
    seen_e: set[int] = set()
    for v in g.nodes():
        order.append(("node", v))
        for h in g.ports(v):
            if h.edge not in seen_e:
                seen_e.add(h.edge)
                order.append(("edge", h.edge))
            order.append(("half", h))
    # which constraints become checkable after each variable
    pos = {x: k for k, x in enumerate(order)}
    node_ready: dict[int, list[int]] = {}
    for v in g.nodes():
        last = max([pos[("node", v)]] + [pos[("half", h)] for h in g.ports(v)]
                   + [pos[("edge", h.edge)] for h in g.ports(v)])
        node_ready.setdefault(last, []).append(v)
    edge_ready: dict[int, list[int]] = {}
    for i, (a, b) in g.edges.items():
        last = max(pos[("node", a.node)], pos[("node", b.node)], pos[("edge", i)],
                   pos[("half", HalfEdge(i, 0))], pos[("half", HalfEdge(i, 1))])
        edge_ready.setdefault(last, []).append(i)

    out = Labeling()
    tables = {"node": out.nodes, "edge": out.edges, "half": out.halves}
    domains = {"node": sv, "edge": se, "half": sb}
    found: list[Labeling] = []
    count = 0

    def rec(k: int):
        nonlocal count
        if k == len(order):
            count += 1
            if keep is None or len(found) < keep:
                found.append(out.copy())
            return
        kind, key = order[k]
        for x in domains[kind]:
            tables[kind][key] = x
            if all(not problem.node_ok(node_star(g, v, inputs, out)) for v in node_ready.get(k, ())) and \
               all(not problem.edge_ok(edge_config(g, i, inputs, out)) for i in edge_ready.get(k, ())):
                rec(k + 1)
        del tables[kind][key]

    rec(0)
    return count, found


# -- sinkless orientation -------------------------------------------------------

OUT, IN = "out", "in"


def _so_node(star: NodeStar) -> list:
    return [] if any(s.bout == OUT for s in star.slots) else ["so.node"]


def _so_edge(c: EdgeConfig) -> list:
    return [] if {c.buout, c.bvout} == {OUT, IN} else ["so.edge"]


def sinkless_orientation() -> NeLclProblem:
    return NeLclProblem("sinkless-orientation", UNIT_SIGMA, Sigma(UNIT, UNIT, Finite([OUT, IN])),
                        _so_node, _so_edge)


def _find_cycle(g: PortedMultigraph, comp: list[int]) -> list[HalfEdge] | None:
    """A cycle as a list of half-edges, each leaving the previous cycle node; None for trees."""
    parent_half: dict[int, HalfEdge | None] = {}
    for s in comp:
        if s in parent_half:
            continue
        parent_half[s] = None
        stack = [(s, iter(g.ports(s)))]
        while stack:
            v, it = stack[-1]
            h = next(it, None)
            if h is None:
                stack.pop()
                continue
            if h == parent_half[v]:
                continue
            w = g.neighbor(h)
            if w in parent_half:
                if w == v:
                    return [h]
                if any(x == w for x, _ in stack):
                    # back edge to an ancestor closes a cycle w -> ... -> v -> w
                    path = []
                    x = v
                    while x != w:
                        ph = parent_half[x]
                        path.append(g.twin(ph))
                        x = g.neighbor(ph)
                    path.reverse()
                    return path + [h]
                continue
            parent_half[w] = g.twin(h)
            stack.append((w, iter(g.ports(w))))
    return None


def so_oracle(g: PortedMultigraph) -> Labeling | None:
    """Centralized sinkless orientation, or None if some component is a tree."""
    out = Labeling({v: None for v in g.nodes()}, {i: None for i in g.edges}, {})
    for comp in g.components():
        cyc = _find_cycle(g, comp)
        if cyc is None:
            return None
        done_edges = set()
        for h in cyc:
            out.halves[h] = OUT
            out.halves[g.twin(h)] = IN
            done_edges.add(h.edge)
        on_cycle = {g.node_of(h) for h in cyc}
        seen = set(on_cycle)
        dq = deque(sorted(on_cycle))
        while dq:
            v = dq.popleft()
            for h in g.ports(v):
                w = g.neighbor(h)
                if w in seen:
                    continue
                seen.add(w)
                out.halves[g.twin(h)] = OUT
                out.halves[h] = IN
                done_edges.add(h.edge)
                dq.append(w)
        for v in comp:
            for h in g.ports(v):
                if h.edge not in done_edges:
                    done_edges.add(h.edge)
                    out.halves[HalfEdge(h.edge, 0)] = OUT
                    out.halves[HalfEdge(h.edge, 1)] = IN
    return out


def so_full_gather_solver() -> LocalAlgorithm:
    """Each node gathers radius n, runs :func:`so_oracle` on its component and keeps its own part.

    With an incomplete view the node orients all its half-edges outwards,
    which fails verification; a tree component is a declared failure.
    """
    def rule(view: View, n, delta, tape):
        g = view.graph
        v = view.root
        if not view.knows_everything():
            return star_output(view, None, {h: None for h in g.ports(v)}, {h: OUT for h in g.ports(v)})
        sol = so_oracle(g)
        if sol is None:
            raise SolverFailure(f"component of node {v} is a tree; sinkless orientation is unsolvable")
        return star_output(view, None, {h: None for h in g.ports(v)}, {h: sol.halves[h] for h in g.ports(v)})

    return LocalAlgorithm("so-full-gather", lambda n: n, rule, sinkless_orientation().outputs)


def so_solvable(g: PortedMultigraph) -> bool:
    """Counting criterion: every component has at least as many edges as nodes."""
    edges_in: dict[int, int] = {}
    comps = g.components()
    where = {v: k for k, c in enumerate(comps) for v in c}
    for a, _ in g.edges.values():
        edges_in[where[a.node]] = edges_in.get(where[a.node], 0) + 1
    return all(edges_in.get(k, 0) >= len(c) for k, c in enumerate(comps))


# -- registry -------------------------------------------------------------------

def get_problem(name: str, deltas: list[int] | tuple[int, ...] = ()) -> Any:
    """Resolve a registry name: ``sinkless-orientation``, ``psi``, ``psi-g`` or ``pi-prime@k``.

    ``deltas`` supplies the gadget degree per level (one value for ``psi-g``,
    ``k`` values for ``pi-prime@k``).
    """
    if name == "sinkless-orientation":
        return sinkless_orientation()
    if name in ("psi", "psi-g"):
        if len(deltas) < 1:
            raise ValueError(f"{name} needs a gadget degree")
        from .gadget.psi import psi_g_problem, psi_problem
        return (psi_problem if name == "psi" else psi_g_problem)(deltas[0])
    if name.startswith("pi-prime@"):
        k = int(name.split("@", 1)[1])
        if k < 1 or len(deltas) < k:
            raise ValueError(f"{name} needs {k} gadget degree(s), got {list(deltas)}")
        from .padding.recursion import recurse
        return recurse(sinkless_orientation(), k + 1, list(deltas)[:k])
    raise ValueError(f"unknown problem {name!r}")
