"""Algorithm V: error labels for gadget graphs, and the lift to proof-carrying outputs."""

from __future__ import annotations

import math

from ..graph import Labeling, PortedMultigraph, View
from ..local import LocalAlgorithm, star_output
from .check import CHAIN_KINDS, GadgetIndex, node_violations, star_violations
from .labels import CENTER, LEFT, PARENT, RCHILD, RIGHT, UP, down
from .psi import CHAIN_PALETTE, ERREDGE, ERROR, GADOK, OK_HALF, OK_NODE, PsiHalf, PsiNode


class _Walker:
    """Reachability of error nodes along uniquely labeled half-edges."""

    def __init__(self, idx: GadgetIndex, errors: set, known=None):
        self.idx = idx
        self.errors = errors
        self.known = known  # nodes whose status may be trusted; None means all
        self.memo: dict = {}

    def _next(self, v, label):
        w = self.idx.follow(v, label)
        if w is None or (self.known is not None and w not in self.known):
            return None
        return w

    def reach(self, v, label) -> bool:
        """Following ``label`` at least once from ``v`` hits an error node."""
        key = (v, label)
        if key in self.memo:
            return self.memo[key]
        self.memo[key] = False  # cycle guard
        w = self._next(v, label)
        res = False
        if w is not None:
            res = w in self.errors or self.reach(w, label)
        self.memo[key] = res
        return res

    def rl0(self, v) -> bool:
        return v in self.errors or self.reach(v, RIGHT) or self.reach(v, LEFT)

    def then_rl(self, v, label) -> bool:
        """``label`` at least once, then Right* or Left*, hits an error."""
        key = (v, label, "rl")
        if key in self.memo:
            return self.memo[key]
        self.memo[key] = False
        w = self._next(v, label)
        res = False
        if w is not None:
            res = self.rl0(w) or (w not in self.errors and self.then_rl(w, label))
        self.memo[key] = res
        return res

    def pointer(self, v) -> str:
        if self.reach(v, RIGHT):
            return RIGHT
        if self.reach(v, LEFT):
            return LEFT
        if self.then_rl(v, PARENT):
            return PARENT
        if self.then_rl(v, RCHILD):
            return RCHILD
        return PARENT if PARENT in self.idx.label_set[v] else UP


def v_outputs(g: PortedMultigraph, labels: Labeling, delta: int, index: GadgetIndex | None = None,
              errors: set | None = None, known=None) -> dict[int, str]:
    """Node outputs of V computed with full knowledge of each component."""
    idx = index or GadgetIndex(g, labels, delta)
    if errors is None:
        errors = {v for v in g.nodes() if node_violations(idx, v)}
    walker = _Walker(idx, errors, known)
    out: dict[int, str] = {}
    for comp in g.components():
        if not errors & set(comp):
            out.update({v: GADOK for v in comp})
            continue
        centers = []
        for v in comp:
            if v in errors:
                out[v] = ERROR
            elif labels.nodes[v].index == CENTER:
                centers.append(v)
            else:
                out[v] = walker.pointer(v)
        for c in centers:
            out[c] = _center_pointer(idx, c, errors, out, delta)
    return out


def _center_pointer(idx: GadgetIndex, c: int, errors: set, out: dict, delta: int) -> str:
    for i in range(1, delta + 1):
        root = idx.follow(c, down(i))
        if root is not None and (root in errors or out.get(root) == RCHILD):
            return down(i)
    return down(1)  # unreachable when the center passes its own checks


def algorithm_v(g: PortedMultigraph, labels: Labeling, delta: int) -> Labeling:
    nodes = v_outputs(g, labels, delta)
    return Labeling(nodes, {i: None for i in g.edges}, {h: None for h in g.half_edges()})


def v_radius(n_upper: int) -> int:
    return 4 * max(1, math.ceil(math.log2(max(2, n_upper))))


def v_local(delta: int, radius: int | None = None) -> LocalAlgorithm:
    """Gather-and-compute form of V with radius ``4 * ceil(log2 n)`` unless fixed.

    Checks are only trusted at nodes whose 4-hop neighborhood lies in the view;
    walks stop where trusted knowledge ends.
    """

    def rule(view: View, n, _delta, _tape):
        idx = GadgetIndex(view.graph, view.labels, delta)
        if view.knows_everything():
            known = None
            errors = {v for v in view.graph.nodes() if node_violations(idx, v)}
        else:
            t = view.radius - 4
            known = {v for v, d in view.dist.items() if d <= t}
            errors = {v for v in known if node_violations(idx, v)}
        out = v_outputs(view.graph, view.labels, delta, idx, errors, known)
        return star_output(view, out[view.root], {}, {})

    if radius is None:
        return LocalAlgorithm("V", v_radius, rule)
    return LocalAlgorithm(f"V[T={radius}]", lambda n: radius, rule)


# -- proof-carrying outputs -----------------------------------------------------------

def psi_g_transform(g: PortedMultigraph, labels: Labeling, delta: int, outputs: dict[int, str] | None = None,
                    index: GadgetIndex | None = None) -> Labeling:
    """Turn V's node outputs into a labeling of the node-edge-checkable form."""
    idx = index or GadgetIndex(g, labels, delta)
    if outputs is None:
        outputs = v_outputs(g, labels, delta, idx)
    certs: dict[int, tuple] = {}
    chains: list[tuple[int, str, list]] = []
    for v, x in outputs.items():
        if x != ERROR:
            continue
        bad = star_violations(labels.nodes[v], idx.slots(v), delta)
        if bad:
            certs[v] = ("star", bad[0])
            continue
        for name, kind in CHAIN_KINDS.items():
            used = idx.chain_violated(v, kind)
            if used is not None:
                chains.append((v, name, used))
                break
        else:
            raise AssertionError(f"node {v} fails no certifiable constraint")
    node_tags: dict[int, set] = {v: set() for v in g.nodes()}
    half_tags: dict = {h: set() for h in g.half_edges()}
    colors_at: dict[int, set] = {v: set() for v in g.nodes()}
    for v, name, used in chains:
        path_nodes = [v] + [g.neighbor(h) for h in used]
        busy = set().union(*(colors_at[w] for w in path_nodes))
        c = 1
        while c in busy:
            c += 1
        if c > CHAIN_PALETTE:
            raise AssertionError("too many overlapping chains for the chain palette")
        for w in path_nodes:
            colors_at[w].add(c)
        for j, w in enumerate(path_nodes):
            node_tags[w].add((c, name, j))
        for j, h in enumerate(used):
            half_tags[h].add((c, name, j, "out"))
            half_tags[g.twin(h)].add((c, name, j + 1, "in"))
        certs[v] = ("chain", name, c)
    nodes, edges, halves = {}, {}, {}
    for v in g.nodes():
        x = outputs[v]
        if x == GADOK:
            nodes[v] = OK_NODE
            for h in g.ports(v):
                halves[h] = OK_HALF
            continue
        nodes[v] = PsiNode(x, certs.get(v), frozenset(node_tags[v]))
        for h in g.ports(v):
            claim = None
            if x == ERROR:
                t = g.twin(h)
                claim = (labels.nodes[g.node_of(t)], labels.halves[t])
            halves[h] = PsiHalf(x, claim, frozenset(half_tags[h]))
    for i, (a, b) in g.edges.items():
        edges[i] = GADOK if outputs[a.node] == GADOK and outputs[b.node] == GADOK else ERREDGE
    return Labeling(nodes, edges, halves)
