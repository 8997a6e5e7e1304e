"""The error-labeling problem on gadgets: constant-radius form and node-edge-checkable form.

Constant-radius form: every node outputs ``GadOk``, ``Error`` or one pointer.
Node-edge form: node and half-edge outputs additionally carry proof data
(claims about the far side of an edge and tagged chains), so that every
``Error`` can be certified by node and edge predicates alone.
"""

from __future__ import annotations

from typing import NamedTuple

from ..alphabet import UNIT, Finite, Powerset, Product, Union
from ..codec import register
from ..graph import Labeling, PortedMultigraph
from ..nelcl import EdgeConfig, NeLclProblem, NodeStar, Sigma, Violation
from .check import CHAIN_KINDS, STAR_IDS, GadgetIndex, StarSlot, node_violations, star_violations
from .labels import LEFT, PARENT, RCHILD, RIGHT, UP, down, down_index, ghalf_alphabet, gnode_alphabet

GADOK, ERROR = "GadOk", "Error"
ERREDGE = "ErrEdge"
CHAIN_PALETTE = 64

POINTER_IDS = {RIGHT: "psi.3a", LEFT: "psi.3b", PARENT: "psi.3c", RCHILD: "psi.3d", UP: "psi.3e"}


def pointers(delta: int) -> tuple[str, ...]:
    return (RIGHT, LEFT, PARENT, RCHILD, UP) + tuple(down(i) for i in range(1, delta + 1))


def main_labels(delta: int) -> tuple[str, ...]:
    return (GADOK, ERROR) + pointers(delta)


def pointer_id(p: str) -> str:
    return POINTER_IDS.get(p, "psi.3f")


def allowed_targets(p: str, index: int, delta: int) -> set:
    """Outputs the node behind pointer ``p`` may carry (``index`` is the pointing node's index)."""
    if p == RIGHT:
        return {ERROR, RIGHT}
    if p == LEFT:
        return {ERROR, LEFT}
    if p == PARENT:
        return {ERROR, PARENT, LEFT, RIGHT, UP}
    if p == RCHILD:
        return {ERROR, RCHILD, RIGHT, LEFT}
    if p == UP:
        return {ERROR} | {down(j) for j in range(1, delta + 1) if j != index}
    if down_index(p) is not None:
        return {ERROR, RCHILD}
    return set()


# -- constant-radius form ------------------------------------------------------------

class PsiProblem:
    """Verifier for the constant-radius error-labeling problem (node outputs only)."""

    def __init__(self, delta: int):
        self.delta = delta
        self.name = "psi"
        self.output_alphabet = Finite(main_labels(delta))

    def verify(self, g: PortedMultigraph, inputs: Labeling, outputs: Labeling,
               index: GadgetIndex | None = None) -> list[Violation]:
        idx = index or GadgetIndex(g, inputs, self.delta)
        out = []
        for v in g.nodes():
            x = outputs.nodes.get(v)
            if x not in self.output_alphabet:
                out.append(Violation("node", v, "psi.1"))
                continue
            nb = [outputs.nodes.get(g.neighbor(h)) for h in g.ports(v)]
            if any((y == GADOK) != (x == GADOK) for y in nb):
                out.append(Violation("node", v, "psi.1"))
            if x == GADOK:
                continue
            fails = bool(node_violations(idx, v))
            if (x == ERROR) != fails:
                out.append(Violation("node", v, "psi.2"))
            if x == ERROR:
                continue
            hs = idx.by_label[v].get(x, [])
            ok = set(allowed_targets(x, inputs.nodes[v].index, self.delta))
            if not hs or any(outputs.nodes.get(g.neighbor(h)) not in ok for h in hs):
                out.append(Violation("node", v, pointer_id(x)))
        return out


def psi_problem(delta: int) -> PsiProblem:
    return PsiProblem(delta)


# -- node-edge-checkable form -----------------------------------------------------------

@register
class PsiNode(NamedTuple):
    main: str
    cert: object = None  # None, ("star", constraint id) or ("chain", kind, color)
    tags: frozenset = frozenset()  # (color, kind, position)


@register
class PsiHalf(NamedTuple):
    main: str
    claim: object = None  # (far GNode, far GHalf) or None
    tags: frozenset = frozenset()  # (color, kind, position, "out" | "in")


OK_NODE = PsiNode(GADOK)
OK_HALF = PsiHalf(GADOK)


def _tag_universe():
    tags, htags = [], []
    for c in range(1, CHAIN_PALETTE + 1):
        for name, kind in CHAIN_KINDS.items():
            n = len(kind.path)
            for j in range(n + 1):
                tags.append((c, name, j))
                if j < n:
                    htags.append((c, name, j, "out"))
                if j > 0:
                    htags.append((c, name, j, "in"))
    return tags, htags


_TAGS, _HTAGS = _tag_universe()


def psi_g_sigmas(delta: int) -> tuple[Sigma, Sigma]:
    gn, gh = gnode_alphabet(delta), ghalf_alphabet(delta)
    main = Finite(main_labels(delta))
    certs = Finite([None] + [("star", c) for c in STAR_IDS]
                   + [("chain", k, c) for k in CHAIN_KINDS for c in range(1, CHAIN_PALETTE + 1)])
    node = Product([main, certs, Powerset(Finite(_TAGS))], PsiNode)
    claim = Union([Finite([None]), Product([gn, gh])])
    half = Product([main, claim, Powerset(Finite(_HTAGS))], PsiHalf)
    return Sigma(gn, UNIT, gh), Sigma(node, Finite([GADOK, ERREDGE]), half)


def _psi_g_node(delta: int):
    def node_ok(star: NodeStar) -> list[str]:
        me, out = star.vin, star.vout
        bad = []
        if any(s.bout.main != out.main for s in star.slots):
            bad.append("psig.rep")
        if out.main == GADOK:
            if out.cert is not None or out.tags or any(s.bout != OK_HALF or s.eout != GADOK for s in star.slots):
                bad.append("psig.ok")
            return bad
        if any(s.eout != ERREDGE for s in star.slots):
            bad.append("psig.rep")
        labels = {s.bin.label for s in star.slots}
        if out.main == ERROR:
            if not _cert_ok(me, out, star.slots, labels, delta):
                bad.append("psi.2")
        else:
            if out.cert is not None:
                bad.append("psi.2")
            if out.main not in labels:
                bad.append(pointer_id(out.main))
        if not _tags_ok(out, star.slots, labels):
            bad.append("psig.chain")
        return bad
    return node_ok


def _cert_ok(me, out: PsiNode, slots, labels, delta) -> bool:
    cert = out.cert
    if not isinstance(cert, tuple) or not cert:
        return False
    if cert[0] == "star":
        if any(s.bout.claim is None for s in slots):
            return False
        star = [StarSlot(s.bin, s.bout.claim[0], s.bout.claim[1]) for s in slots]
        return cert[1] in star_violations(me, star, delta)
    if cert[0] == "chain":
        _, name, color = cert
        kind = CHAIN_KINDS[name]
        return me.index != 0 and (color, name, 0) in out.tags and kind.start(labels)
    return False


def _tags_ok(out: PsiNode, slots, labels) -> bool:
    outs: dict[tuple, list] = {}
    for s in slots:
        for c, name, j, d in s.bout.tags:
            if (c, name, j) not in out.tags:
                return False
            if d == "out":
                outs.setdefault((c, name, j), []).append(s)
    for c, name, j in out.tags:
        kind = CHAIN_KINDS[name]
        n = len(kind.path)
        if j < n:
            carriers = outs.get((c, name, j), [])
            if len(carriers) != 1 or carriers[0].bin.label != kind.path[j]:
                return False
        elif not kind.closed and not kind.end(labels):
            return False
        if kind.closed and j == 0 and (c, name, n) in out.tags:
            return False
    return True


def _psi_g_edge(delta: int):
    def one_side(c: EdgeConfig) -> list[str]:
        bad = []
        if c.buout.claim is not None and c.buout.claim != (c.vin, c.bvin):
            bad.append("psig.claim")
        p = c.buout.main
        if p not in (GADOK, ERROR) and c.buin.label == p:
            if c.bvout.main not in allowed_targets(p, c.uin.index, delta):
                bad.append(pointer_id(p))
        for col, name, j, d in c.buout.tags:
            if d == "out":
                kind = CHAIN_KINDS[name]
                if (col, name, j + 1, "in") not in c.bvout.tags or (col, name, j + 1) not in c.vout.tags:
                    bad.append("psig.chain")
                elif j == 0 and kind.first_far is not None and c.bvin.label != kind.first_far:
                    bad.append("psig.chain")
            elif (col, name, j - 1, "out") not in c.bvout.tags:
                bad.append("psig.chain")
        return bad

    def edge_ok(c: EdgeConfig) -> list[str]:
        bad = []
        if (c.uout.main == GADOK) != (c.vout.main == GADOK):
            bad.append("psi.1")
        for x in one_side(c) + one_side(c.flipped()):
            if x not in bad:
                bad.append(x)
        return bad
    return edge_ok


def psi_g_problem(delta: int) -> NeLclProblem:
    ins, outs = psi_g_sigmas(delta)
    return NeLclProblem("psi-g", ins, outs, _psi_g_node(delta), _psi_g_edge(delta), (delta,))
