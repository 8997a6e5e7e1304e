import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lcl_padding.graph import HalfEdge, Labeling, cycle, graph_from_pairs
from lcl_padding.nelcl import (LabelingError, Violation, enumerate_solutions, get_problem, sinkless_orientation,
                               so_oracle, so_solvable)

SO = sinkless_orientation()


def orient(g, heads):
    """Half-edge labels from a set of half-edges labeled out (all others in)."""
    return Labeling({v: None for v in g.nodes()}, {i: None for i in g.edges},
                    {h: "out" if h in heads else "in" for h in g.half_edges()})


def test_cyclic_orientation_accepted():
    g = cycle(3)
    assert SO.verify(g, None, orient(g, {HalfEdge(i, 0) for i in g.edges})) == []


def test_sink_is_a_node_violation():
    g = cycle(3)
    out = orient(g, {HalfEdge(i, 0) for i in g.edges})
    # node 2 owns side 1 of edge 0 and side 0 of edge 1
    out.halves[HalfEdge(1, 0)] = "in"
    bad = SO.verify(g, None, out)
    assert Violation("node", 2, "so.node") in bad


def test_double_out_edge_is_an_edge_violation():
    g = cycle(3)
    out = orient(g, set(g.half_edges()))
    assert {v.constraint for v in SO.verify(g, None, out)} == {"so.edge"}


def test_partial_or_foreign_labels_raise():
    g = cycle(3)
    with pytest.raises(LabelingError, match="partial"):
        SO.verify(g, None, Labeling())
    out = orient(g, set())
    out.halves[HalfEdge(0, 0)] = "up"
    with pytest.raises(LabelingError, match="alphabet"):
        SO.verify(g, None, out)


@pytest.mark.parametrize("g, count", [
    (cycle(3), 2), (cycle(4), 2), (graph_from_pairs(2, [(1, 2)]), 0), (cycle(1), 2),
    (graph_from_pairs(2, [(1, 2), (1, 2)]), 2),
])
def test_solution_counts(g, count):
    assert enumerate_solutions(SO, g, keep=0)[0] == count


def test_counts_match_brute_force_orientations():
    # independent count: try every orientation of every edge
    g = graph_from_pairs(4, [(1, 2), (2, 3), (3, 1), (3, 4), (4, 4)])
    good = 0
    for bits in itertools.product((0, 1), repeat=g.m):
        heads = {HalfEdge(i, b) for i, b in zip(g.edges, bits)}
        outs = {g.node_of(h) for h in heads}
        good += outs == set(g.nodes())
    assert enumerate_solutions(SO, g, keep=0)[0] == good


@given(st.integers(1, 5).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(1, n), st.integers(1, n)), max_size=7))))
@settings(max_examples=150)
def test_oracle_matches_counting_criterion(case):
    n, pairs = case
    g = graph_from_pairs(n, pairs)
    sol = so_oracle(g)
    assert (sol is not None) == so_solvable(g)
    if sol is not None:
        assert SO.verify(g, None, sol) == []


def test_registry():
    assert get_problem("sinkless-orientation").name == "sinkless-orientation"
    assert get_problem("psi-g", [3]).name == "psi-g"
    assert get_problem("pi-prime@2", [2, 3]).name == "pi-prime[pi-prime[sinkless-orientation,2],3]"
    with pytest.raises(ValueError):
        get_problem("pi-prime@2", [2])
    with pytest.raises(ValueError):
        get_problem("coloring")
