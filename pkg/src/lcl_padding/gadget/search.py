"""Exhaustive search for error labelings that the constant-radius verifier accepts."""

from __future__ import annotations

from collections import deque

from ..graph import Labeling, PortedMultigraph
from .check import GadgetIndex, node_violations
from .psi import ERROR, allowed_targets, pointers


class SearchBudgetExceeded(RuntimeError):
    pass


def search_error_labeling(g: PortedMultigraph, labels: Labeling, delta: int,
                          budget: int = 10**6) -> dict[int, str] | None:
    """An accepted labeling in which no node outputs ``GadOk``, or None if none exists.

    Nodes failing a check are forced to ``Error``; every other node must pick a
    pointer along one of its own half-edge labels. Arc consistency prunes the
    domains before backtracking with a smallest-domain-first order.
    """
    idx = GadgetIndex(g, labels, delta)
    ptrs = set(pointers(delta))
    dom: dict[int, set] = {}
    for v in g.nodes():
        if node_violations(idx, v):
            dom[v] = {ERROR}
        else:
            dom[v] = {p for p in idx.label_set[v] if p in ptrs}
    index = {v: labels.nodes[v].index for v in g.nodes()}
    arcs = {}  # (u, w) -> pointers at u that aim at w
    for v in g.nodes():
        for h in g.ports(v):
            lab = labels.halves[h].label
            if lab in ptrs:
                arcs.setdefault((v, g.neighbor(h)), set()).add(lab)

    def consistent(u, p, w, q) -> bool:
        if p in arcs.get((u, w), ()) and q not in allowed_targets(p, index[u], delta):
            return False
        if q in arcs.get((w, u), ()) and p not in allowed_targets(q, index[w], delta):
            return False
        return True

    nbrs: dict[int, set] = {v: set() for v in g.nodes()}
    for u, w in arcs:
        nbrs[u].add(w)
        nbrs[w].add(u)

    def ac3(d: dict) -> bool:
        queue = deque((u, w) for u in d for w in nbrs[u])
        while queue:
            u, w = queue.popleft()
            keep = {p for p in d[u] if any(consistent(u, p, w, q) for q in d[w])} if u != w else \
                {p for p in d[u] if consistent(u, p, u, p)}
            if keep != d[u]:
                d[u] = keep
                if not keep:
                    return False
                queue.extend((x, u) for x in nbrs[u] if x != w)
        return True

    steps = 0

    def solve(d: dict) -> dict | None:
        nonlocal steps
        steps += 1
        if steps > budget:
            raise SearchBudgetExceeded(f"more than {budget} search nodes")
        if not ac3(d):
            return None
        open_ = [v for v in d if len(d[v]) > 1]
        if not open_:
            return {v: next(iter(s)) for v, s in d.items()}
        v = min(open_, key=lambda x: (len(d[x]), x))
        for p in sorted(d[v]):
            nd = {k: set(s) for k, s in d.items()}
            nd[v] = {p}
            res = solve(nd)
            if res is not None:
                return res
        return None

    if any(not s for s in dom.values()):
        return None
    return solve(dom)
