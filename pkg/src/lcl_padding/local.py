"""Synchronous LOCAL model in its gather-compute-output form."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .graph import Labeling, PortedMultigraph, View, ball


class RunError(RuntimeError):
    """The outputs of a run are inconsistent (e.g. endpoints disagree on an edge)."""


class SolverFailure(RuntimeError):
    """A node rule declared that it cannot solve its instance."""


class RandomTape:
    """Per-node random stream derived from ``(master seed, node id)``."""

    def __init__(self, seed: int, node: int):
        self.seed = int(seed) & (2**64 - 1)
        self.node = node
        self._rng: Optional[np.random.Generator] = None

    @property
    def rng(self) -> np.random.Generator:
        if self._rng is None:
            self._rng = np.random.default_rng(np.random.SeedSequence([self.seed, self.node]))
        return self._rng


@dataclass
class StarOutput:
    """A node's own output: its label plus labels of incident edges and half-edges, by port."""

    node: object = None
    edges: dict = field(default_factory=dict)
    halves: dict = field(default_factory=dict)


Rule = Callable[[View, int, int, RandomTape], StarOutput]


@dataclass(frozen=True)
class LocalAlgorithm:
    """A radius function plus a node rule.

    The rule gets the radius-T view, the number of nodes ``n``, the degree
    bound and the node's random tape, and labels the root, its incident edges
    and its own half-edges.
    """

    name: str
    radius: Callable[[int], int]
    rule: Rule
    alphabets: object = None  # optional Sigma of output alphabets

    def with_radius(self, t: int) -> "LocalAlgorithm":
        return LocalAlgorithm(f"{self.name}[T={t}]", lambda n, t=t: t, self.rule, self.alphabets)


def run(g: PortedMultigraph, inputs: Labeling | None, alg: LocalAlgorithm, seed: int = 0,
        delta: int | None = None, n: int | None = None) -> Labeling:
    """Run ``alg`` at every node and assemble the global output labeling."""
    n_known = g.n if n is None else n
    delta = g.max_degree() if delta is None else delta
    t = alg.radius(n_known)
    token = object()
    out = Labeling()
    for v in g.nodes():
        view = ball(g, inputs, v, t, source=token)
        part = alg.rule(view, n_known, delta, RandomTape(seed, v))
        _merge_node_output(g, v, part, out, alg)
    return out


def _merge_node_output(g: PortedMultigraph, v: int, part: StarOutput, out: Labeling, alg):
    ports = g._ports[v]
    if set(part.edges) - set(ports) or set(part.halves) - set(ports):
        raise RunError(f"node {v} labeled ports it does not have")
    sig = alg.alphabets
    if sig is not None and part.node not in sig.v:
        raise RunError(f"node {v} emitted {part.node!r} outside the node alphabet")
    out.nodes[v] = part.node
    for p, x in part.edges.items():
        e = ports[p].edge
        if sig is not None and x not in sig.e:
            raise RunError(f"node {v} emitted {x!r} outside the edge alphabet")
        if e in out.edges and out.edges[e] != x:
            raise RunError(f"endpoints disagree on edge {e}: {out.edges[e]!r} vs {x!r}")
        out.edges[e] = x
    for p, x in part.halves.items():
        if sig is not None and x not in sig.b:
            raise RunError(f"node {v} emitted {x!r} outside the half-edge alphabet")
        out.halves[ports[p]] = x


def star_output(view: View, node, edges: dict | None = None, halves: dict | None = None) -> StarOutput:
    """Convert labels keyed by the root's half-edges into a port-keyed output.

    ``edges`` maps a root half-edge to the label of its edge.
    """
    g = view.graph
    return StarOutput(node,
                      {g.port_of(h): x for h, x in (edges or {}).items()},
                      {g.port_of(h): x for h, x in (halves or {}).items()})


def measure_locality(g: PortedMultigraph, inputs: Labeling | None, problem,
                     family: Callable[[int], LocalAlgorithm], t_max: int, seed: int = 0,
                     delta: int | None = None) -> int | None:
    """Smallest ``T <= t_max`` whose output verifies, by binary search.

    Assumes verification success is monotone in ``T`` for ``family``; run
    errors and declared failures count as not verified.
    """
    def ok(t: int) -> bool:
        try:
            out = run(g, inputs, family(t), seed=seed, delta=delta)
        except (RunError, SolverFailure):
            return False
        return not problem.verify(g, inputs, out)

    if not ok(t_max):
        return None
    lo, hi = 0, t_max
    while lo < hi:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def constant_rule(node_label=None, edge_label=None, half_label=None, name="constant") -> LocalAlgorithm:
    """Radius-0 rule writing fixed labels on the root's star."""
    def rule(view: View, n, delta, tape):
        d = view.graph.degree(view.root)
        return StarOutput(node_label,
                          {p: edge_label for p in range(1, d + 1)} if edge_label is not None else {},
                          {p: half_label for p in range(1, d + 1)} if half_label is not None else {})
    return LocalAlgorithm(name, lambda n: 0, rule)
