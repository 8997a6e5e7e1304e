"""Local constraints that certify a labeled graph is a gadget.

Constraint ids: ``sg.*`` for sub-gadget nodes, ``g.*`` for the gadget
assembly, ``col.*`` for the distance-2 coloring. Star constraints depend only
on a node, its half-edges and the far side of each incident edge; walk
constraints follow uniquely labeled half-edges for up to four hops.
"""

from __future__ import annotations

from typing import Callable, NamedTuple

from ..graph import HalfEdge, Labeling, PortedMultigraph
from .labels import (CENTER, LCHILD, LEFT, NOPORT, PARENT, RCHILD, RIGHT, SUB_LABELS, UP, GHalf, GNode,
                     down, down_index, palette_size)

STAR_IDS = ("sg.1b", "sg.1c", "sg.1d", "sg.2a", "sg.2b", "sg.3c", "sg.3d", "sg.3e", "sg.3f", "sg.3h",
            "g.1", "g.2a", "g.2b", "g.2c", "g.2d", "col.range", "col.rep", "col.adj", "col.d2")


class StarSlot(NamedTuple):
    own: GHalf
    far_node: GNode
    far: GHalf


def _opposite(label):
    return {LEFT: RIGHT, RIGHT: LEFT}.get(label)


def star_violations(me: GNode, slots, delta: int) -> list[str]:
    """Failed star constraints at a node; ``slots`` is a sequence of :class:`StarSlot`."""
    bad: list[str] = []
    labels = [s.own.label for s in slots]
    has = set(labels)
    if len(has) != len(labels):
        bad.append("sg.1b")
    if me.index == CENTER:
        if any(down_index(l) is None or not 1 <= down_index(l) <= delta for l in labels):
            bad.append("sg.1b")
        if me.port != NOPORT:
            bad.append("sg.1d")
        if len(slots) != delta:
            bad.append("g.2a")
        if any(s.far_node.index == CENTER or s.own.label != down(s.far_node.index) for s in slots):
            bad.append("g.2b")
        if any(s.far.label != UP for s in slots):
            bad.append("g.2c")
        idx = [s.far_node.index for s in slots]
        if len(set(idx)) != len(idx):
            bad.append("g.2d")
    else:
        if not has <= set(SUB_LABELS) or (UP in has and PARENT in has):
            bad.append("sg.1b")
        if not 1 <= me.index <= delta or any(s.far_node.index != me.index for s in slots if s.own.label != UP):
            bad.append("sg.1c")
        if me.port != NOPORT and me.port != me.index:
            bad.append("sg.1d")
        for s in slots:
            if (_opposite(s.own.label) or _opposite(s.far.label)) and _opposite(s.own.label) != s.far.label:
                bad.append("sg.2a")
                break
        for s in slots:
            own_child = s.own.label in (LCHILD, RCHILD)
            far_child = s.far.label in (LCHILD, RCHILD)
            if (s.own.label == PARENT) != far_child or (s.far.label == PARENT) != own_child:
                bad.append("sg.2b")
                break
        parents = [s for s in slots if s.own.label == PARENT]
        if RIGHT not in has and parents and any(s.far.label != RCHILD for s in parents):
            bad.append("sg.3c")
        if LEFT not in has and parents and any(s.far.label != LCHILD for s in parents):
            bad.append("sg.3d")
        if RIGHT not in has and LEFT not in has and (parents or not has - {UP} <= {LCHILD, RCHILD}):
            bad.append("sg.3e")
        if (RCHILD in has) != (LCHILD in has):
            bad.append("sg.3f")
        if (me.port != NOPORT) != (not has & {RIGHT, LCHILD, RCHILD}):
            bad.append("sg.3h")
        if PARENT not in has:
            centers = [s for s in slots if s.far_node.index == CENTER]
            if len(centers) != 1 or centers[0].own.label != UP:
                bad.append("g.1")
    if not 1 <= me.color <= palette_size(delta):
        bad.append("col.range")
    if any(s.own.color != me.color or s.far.color != s.far_node.color for s in slots):
        bad.append("col.rep")
    if any(s.far_node.color == me.color for s in slots):
        bad.append("col.adj")
    far_colors = [s.far_node.color for s in slots]
    if len(set(far_colors)) != len(far_colors):
        bad.append("col.d2")
    return bad


# -- walk constraints -------------------------------------------------------------

Pred = Callable[[set], bool]


class ChainKind(NamedTuple):
    """A walk constraint: follow ``path`` from a start node; violated when the
    end differs from the start (``closed``) or when both end predicates hold.

    ``first_far`` optionally requires the far label of the first step (e.g.
    that the start is the right child of the node it walks to).
    """

    name: str
    cid: str
    path: tuple
    start: Pred
    end: Pred
    closed: bool
    first_far: str | None = None


def _always(_labels) -> bool:
    return True


def _children(labels) -> bool:
    return bool(labels & {LCHILD, RCHILD})


CHAIN_KINDS = {k.name: k for k in (
    ChainKind("2c", "sg.2c", (LCHILD, RIGHT, PARENT), _always, _always, True),
    ChainKind("2d", "sg.2d", (RIGHT, LCHILD, LEFT, PARENT), _always, _always, True),
    ChainKind("3a+", "sg.3a", (PARENT,), lambda s: RIGHT not in s, lambda s: RIGHT in s, False),
    ChainKind("3a-", "sg.3a", (PARENT,), lambda s: RIGHT in s, lambda s: RIGHT not in s, False, RCHILD),
    ChainKind("3b+", "sg.3b", (PARENT,), lambda s: LEFT not in s, lambda s: LEFT in s, False),
    ChainKind("3b-", "sg.3b", (PARENT,), lambda s: LEFT in s, lambda s: LEFT not in s, False, LCHILD),
    ChainKind("3gR", "sg.3g", (RIGHT,), lambda s: not _children(s), _children, False),
    ChainKind("3gL", "sg.3g", (LEFT,), lambda s: not _children(s), _children, False),
)}


class GadgetIndex:
    """Per-node lookup tables over a gadget graph, shared by checkers and algorithm V."""

    def __init__(self, g: PortedMultigraph, labels: Labeling, delta: int):
        self.g = g
        self.labels = labels
        self.delta = delta
        self.by_label: dict[int, dict[str, list[HalfEdge]]] = {}
        self.label_set: dict[int, set] = {}
        for v in g.nodes():
            m: dict[str, list[HalfEdge]] = {}
            for h in g.ports(v):
                m.setdefault(labels.halves[h].label, []).append(h)
            self.by_label[v] = m
            self.label_set[v] = set(m)

    def step(self, v: int, label: str) -> HalfEdge | None:
        hs = self.by_label[v].get(label)
        return hs[0] if hs is not None and len(hs) == 1 else None

    def follow(self, v: int, label: str) -> int | None:
        h = self.step(v, label)
        return None if h is None else self.g.neighbor(h)

    def walk(self, v: int, path) -> list[HalfEdge] | None:
        """Half-edges used when following ``path`` from ``v``; None if some step is missing or ambiguous."""
        used = []
        for lab in path:
            h = self.step(v, lab)
            if h is None:
                return None
            used.append(h)
            v = self.g.neighbor(h)
        return used

    def slots(self, v: int) -> list[StarSlot]:
        g, lab = self.g, self.labels
        return [StarSlot(lab.halves[h], lab.nodes[g.neighbor(h)], lab.halves[g.twin(h)]) for h in g.ports(v)]

    def chain_violated(self, v: int, kind: ChainKind) -> list[HalfEdge] | None:
        if self.labels.nodes[v].index == CENTER or not kind.start(self.label_set[v]):
            return None
        used = self.walk(v, kind.path)
        if used is None:
            return None
        if kind.first_far is not None and self.labels.halves[self.g.twin(used[0])].label != kind.first_far:
            return None
        end = self.g.neighbor(used[-1])
        if kind.closed:
            return used if end != v else None
        return used if kind.end(self.label_set[end]) else None


def structural_loops(g: PortedMultigraph, v: int) -> bool:
    """Self-loop or parallel edges at ``v``."""
    nbrs = [g.neighbor(h) for h in g.ports(v)]
    return v in nbrs or len(set(nbrs)) != len(nbrs)


def node_violations(idx: GadgetIndex, v: int) -> list[str]:
    bad = []
    if structural_loops(idx.g, v):
        bad.append("sg.1a")
    bad += star_violations(idx.labels.nodes[v], idx.slots(v), idx.delta)
    for kind in CHAIN_KINDS.values():
        if kind.cid not in bad and idx.chain_violated(v, kind) is not None:
            bad.append(kind.cid)
    return bad


def check_gadget(g: PortedMultigraph, labels: Labeling, delta: int) -> list[tuple[int, str]]:
    """All (node, constraint id) violations; empty exactly for valid gadgets."""
    missing = [v for v in g.nodes() if not isinstance(labels.nodes.get(v), GNode)]
    missing += [h for h in g.half_edges() if not isinstance(labels.halves.get(h), GHalf)]
    if missing:
        raise ValueError(f"gadget labels missing or malformed, e.g. at {missing[0]}")
    idx = GadgetIndex(g, labels, delta)
    return [(v, c) for v in g.nodes() for c in node_violations(idx, v)]


def failing_nodes(idx: GadgetIndex) -> set[int]:
    return {v for v in idx.g.nodes() if node_violations(idx, v)}
