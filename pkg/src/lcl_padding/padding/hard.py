"""Lower-bound instances: a small base graph padded with equal gadgets, topped up with isolated nodes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from ..gadget.build import GadgetSpec
from ..gadget.labels import gnode_alphabet
from ..graph import GraphError, Labeling, PortedMultigraph, cycle
from ..nelcl import NeLclProblem
from .labels import PPNodeIn
from .pad import PaddedGraph, pad_graph


def shrink(x: int) -> int:
    """Default base-graph size function: floor of the square root."""
    return math.isqrt(x)


def gadget_size(delta: int, h: int) -> int:
    return GadgetSpec.uniform(delta, h).size


def largest_gadget(delta: int, limit: float) -> int | None:
    """Height of the largest equal-height gadget with at most ``limit`` nodes."""
    h = None
    k = 1
    while gadget_size(delta, k) <= limit:
        h = k
        k += 1
    return h


@dataclass
class HardInstance:
    n: int
    f_n: int
    N: int
    height: int
    delta: int
    isolated: int
    padded: PaddedGraph
    graph: PortedMultigraph
    inputs: Labeling


def hard_instance(n: int, delta: int = 3, f: Callable[[int], int] = shrink,
                  base_graph: PortedMultigraph | None = None, base: NeLclProblem | None = None) -> HardInstance:
    """Pad an f(n)-node base graph (a cycle unless given) with the largest gadgets that fit
    n / f(n), then add isolated nodes until there are exactly n nodes."""
    fn = f(n)
    if fn < 1:
        raise GraphError(f"f({n}) = {fn} leaves no base graph")
    h = largest_gadget(delta, n / fn)
    if h is None:
        raise GraphError(f"no gadget with delta={delta} has at most {n}/{fn} nodes")
    if base_graph is None:
        if delta < 2:
            raise GraphError("the default cycle base graph needs delta >= 2")
        base_graph = cycle(fn)
    elif base_graph.n != fn:
        raise GraphError(f"base graph has {base_graph.n} nodes, expected f(n) = {fn}")
    pg = pad_graph(base_graph, GadgetSpec.uniform(delta, h), base=base)
    N = gadget_size(delta, h)
    extra = n - N * fn
    g = pg.graph
    degrees = dict(g.degrees)
    inputs = pg.inputs.copy()
    filler = base.inputs.v.first() if base is not None else None
    top = max(degrees)
    for k in range(1, extra + 1):
        degrees[top + k] = 0
        inputs.nodes[top + k] = PPNodeIn(filler, gnode_alphabet(delta).first())
    graph = PortedMultigraph(degrees, g.edges)
    return HardInstance(n, fn, N, h, delta, extra, pg, graph, inputs)
