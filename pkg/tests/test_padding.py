import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lcl_padding import cycle, graph_from_pairs, run, sinkless_orientation, so_full_gather_solver
from lcl_padding.gadget import GadgetSpec
from lcl_padding.gadget.labels import GHalf, RIGHT, LEFT
from lcl_padding.graph import Endpoint, GraphError, HalfEdge, PortedMultigraph, random_cyclic_graph
from lcl_padding.padding import (extract_virtual_solution, hard_instance, pad_graph, pi_prime_algorithm,
                                 pi_prime_problem, recurse, solve_levels, solve_pi_prime)
from lcl_padding.padding.hard import largest_gadget, shrink
from lcl_padding.padding.labels import (GAD_EDGE, NO_PORT_ERR, PORT_EDGE, PORT_ERR1, PORT_ERR2, PORT_HALF_GAD,
                                        PPEdgeIn, PPHalfIn, canonical_list, is_err)
from lcl_padding.padding.problem import padding_levels
from lcl_padding.padding.recursion import AlphabetBudgetExceeded, alphabet_bits, level_algorithm, pad_levels
from lcl_padding.padding.solve import PHANTOM_BASE, PaddingContext

SO = sinkless_orientation()


def as_nx(g):
    G = nx.MultiGraph()
    G.add_nodes_from(g.nodes())
    for a, b in g.edges.values():
        G.add_edge(a.node, b.node)
    return G


def solve_and_check(g, inputs, delta):
    out = solve_pi_prime(g, inputs, SO, delta, so_full_gather_solver())
    assert pi_prime_problem(SO, delta).verify(g, inputs, out) == []
    return out


# -- padding ---------------------------------------------------------------------

def test_padded_triangle_shape():
    pg = pad_graph(cycle(3), GadgetSpec.uniform(2, 2), base=SO)
    kinds = [pg.kind(e) for e in pg.graph.edges]
    assert pg.graph.n == 21
    assert kinds.count(GAD_EDGE) == 24 and kinds.count(PORT_EDGE) == 3
    assert set(pg.host.values()) == {1, 2, 3}
    for i, e in pg.port_edges.items():
        assert all(pg.inputs.nodes[x.node].gad.port for x in pg.graph.edges[e])


def test_port_edges_join_the_right_ports():
    h = cycle(4)
    pg = pad_graph(h, GadgetSpec.uniform(2, 1), base=SO)
    for i, (a, b) in h.edges.items():
        u, w = pg.graph.edges[pg.port_edges[i]]
        assert pg.inputs.nodes[u.node].gad.port == a.port and pg.host[u.node] == a.node
        assert pg.inputs.nodes[w.node].gad.port == b.port and pg.host[w.node] == b.node


def test_pad_rejects_high_degree():
    with pytest.raises(GraphError):
        pad_graph(graph_from_pairs(2, [(1, 2), (1, 2), (1, 1)]), GadgetSpec.uniform(3, 1))
    with pytest.raises(GraphError):
        pad_graph(cycle(3), {1: GadgetSpec.uniform(2, 1), 2: GadgetSpec.uniform(3, 1), 3: GadgetSpec.uniform(3, 1)})


# -- the lifted problem and its solver -------------------------------------------

@pytest.mark.parametrize("h, delta", [
    (cycle(3), 2), (cycle(1), 2), (graph_from_pairs(2, [(1, 2), (1, 2)]), 2),
    (graph_from_pairs(2, [(1, 2), (1, 2), (1, 1)]), 4),
    (graph_from_pairs(6, [(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4)]), 2),
    (graph_from_pairs(4, [(1, 2), (2, 3), (3, 1), (3, 4), (4, 4)]), 3),
])
def test_round_trip(h, delta):
    pg = pad_graph(h, GadgetSpec.uniform(delta, 2), base=SO)
    out = solve_and_check(pg.graph, pg.inputs, delta)
    vg, vin, vout, members = extract_virtual_solution(pg.graph, pg.inputs, out, delta)
    assert SO.verify(vg, vin, vout) == []
    assert nx.is_isomorphic(as_nx(vg), as_nx(h))
    assert sorted(len(m) for m in members.values()) == [GadgetSpec.uniform(delta, 2).size] * h.n


@given(st.integers(1, 7), st.integers(1, 3), st.integers(0, 2**32))
@settings(max_examples=25, deadline=None)
def test_round_trip_random_bases(n, height, seed):
    h = random_cyclic_graph(n, 3, np.random.default_rng(seed))
    pg = pad_graph(h, GadgetSpec.uniform(3, height), base=SO)
    out = solve_and_check(pg.graph, pg.inputs, 3)
    vg, vin, vout, _ = extract_virtual_solution(pg.graph, pg.inputs, out, 3)
    assert SO.verify(vg, vin, vout) == [] and nx.is_isomorphic(as_nx(vg), as_nx(h))


def test_local_rule_matches_central():
    pg = pad_graph(graph_from_pairs(3, [(1, 2), (2, 3), (3, 1), (1, 1)]), GadgetSpec.uniform(4, 1), base=SO)
    central = solve_pi_prime(pg.graph, pg.inputs, SO, 4, so_full_gather_solver())
    local = run(pg.graph, pg.inputs, pi_prime_algorithm(SO, 4, so_full_gather_solver()))
    assert local == central


def test_corrupted_list_is_rejected():
    pg = pad_graph(cycle(3), GadgetSpec.uniform(2, 1), base=SO)
    out = solve_and_check(pg.graph, pg.inputs, 2)
    v = pg.gadgets[1].center
    x = out.nodes[v]
    flipped = tuple("in" if y == "out" else "out" for y in x.lst.ob)
    out.nodes[v] = x._replace(lst=x.lst._replace(ob=flipped))
    bad = {c.constraint for c in pi_prime_problem(SO, 2).verify(pg.graph, pg.inputs, out)}
    assert "pp.6a" in bad


def break_gadget(pg, base_node):
    """Swap one Right label for Left inside the gadget of ``base_node``."""
    inputs = pg.inputs.copy()
    members = set(pg.gadgets[base_node].graph.nodes())
    for h, x in inputs.halves.items():
        if pg.graph.node_of(h) in members and x.gad.label == RIGHT:
            inputs.halves[h] = x._replace(gad=GHalf(LEFT, x.gad.color))
            return inputs
    raise AssertionError("no Right label")


def test_broken_gadget_drops_out_of_virtual_graph():
    k4 = graph_from_pairs(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
    pg = pad_graph(k4, GadgetSpec.uniform(3, 2), base=SO)
    inputs = break_gadget(pg, 4)
    out = solve_and_check(pg.graph, inputs, 3)
    bad_members = pg.gadgets[4].graph.nodes()
    assert all(is_err(out.nodes[v].psi) for v in bad_members)
    statuses = {out.nodes[v].status for g in (1, 2, 3) for v in pg.gadgets[g].ports.values()}
    assert statuses == {NO_PORT_ERR, PORT_ERR1}
    vg, vin, vout, _ = extract_virtual_solution(pg.graph, inputs, out, 3)
    assert nx.is_isomorphic(as_nx(vg), nx.cycle_graph(3))
    assert SO.verify(vg, vin, vout) == []


def add_port_edge(pg, u, w):
    """Append a PortEdge between padded nodes ``u`` and ``w`` on fresh ports."""
    deg = dict(pg.graph.degrees)
    deg[u] += 1
    deg[w] += 1
    e = pg.graph.m
    edges = dict(pg.graph.edges)
    edges[e] = (Endpoint(u, deg[u]), Endpoint(w, deg[w]))
    g = PortedMultigraph(deg, edges)
    inputs = pg.inputs.copy()
    inputs.edges[e] = PPEdgeIn(None, PORT_EDGE)
    inputs.halves[HalfEdge(e, 0)] = PPHalfIn(None, PORT_HALF_GAD)
    inputs.halves[HalfEdge(e, 1)] = PPHalfIn(None, PORT_HALF_GAD)
    return g, inputs


def test_doubled_port_edge_gives_port_err2_and_phantoms():
    # the doubled 1-2 edge keeps a cycle once the crowded port is dropped
    pg = pad_graph(graph_from_pairs(3, [(1, 2), (2, 3), (3, 1), (1, 2)]), GadgetSpec.uniform(3, 1), base=SO)
    spare = pg.gadgets[3].ports[3]
    crowded = pg.gadgets[1].ports[1]
    g, inputs = add_port_edge(pg, spare, crowded)
    out = solve_and_check(g, inputs, 3)
    assert out.nodes[crowded].status == PORT_ERR2
    ctx = PaddingContext(g, inputs, SO, 3)
    vg = ctx.virtual_graph()
    assert any(v >= PHANTOM_BASE for v in vg.graph.nodes())
    local = run(g, inputs, pi_prime_algorithm(SO, 3, so_full_gather_solver()))
    assert local == out


def test_invalid_gadgets_use_canonical_list():
    k4 = graph_from_pairs(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
    pg = pad_graph(k4, GadgetSpec.uniform(3, 2), base=SO)
    inputs = break_gadget(pg, 2)
    out = solve_and_check(pg.graph, inputs, 3)
    assert {out.nodes[v].lst for v in pg.gadgets[2].graph.nodes()} == {canonical_list(SO, 3)}


# -- hard instances --------------------------------------------------------------

def test_hard_instance_100():
    hi = hard_instance(100, 3)
    assert (hi.f_n, hi.N, hi.height, hi.isolated) == (10, 10, 2, 0)


def test_hard_instance_with_isolated_nodes():
    hi = hard_instance(30, 3)
    assert (hi.f_n, hi.N, hi.isolated, hi.graph.n) == (5, 4, 10, 30)
    assert sum(1 for v in hi.graph.nodes() if hi.graph.degree(v) == 0) == 10


@given(st.integers(20, 2000), st.integers(2, 4))
@settings(max_examples=60, deadline=None)
def test_hard_instance_size_is_exact(n, delta):
    try:
        hi = hard_instance(n, delta)
    except GraphError:
        assert largest_gadget(delta, n / shrink(n)) is None
        return
    assert hi.graph.n == n and hi.N * hi.f_n + hi.isolated == n
    assert largest_gadget(delta, n / hi.f_n) == hi.height


def test_hard_instance_errors():
    with pytest.raises(GraphError):
        hard_instance(3, 3)
    with pytest.raises(GraphError):
        hard_instance(100, 1)
    with pytest.raises(GraphError):
        hard_instance(100, 3, base_graph=cycle(4))


def test_hard_instance_is_solvable():
    hi = hard_instance(64, 2, base=SO)
    out = solve_pi_prime(hi.graph, hi.inputs, SO, 2, so_full_gather_solver())
    assert pi_prime_problem(SO, 2).verify(hi.graph, hi.inputs, out) == []


# -- recursion -------------------------------------------------------------------

def test_chain_and_alphabet_growth():
    p = recurse(SO, 3, [2, 3])
    assert [q.name for q in padding_levels(p)] == [
        "sinkless-orientation", "pi-prime[sinkless-orientation,2]", "pi-prime[pi-prime[sinkless-orientation,2],3]"]
    bits = [alphabet_bits(q) for q in padding_levels(p)]
    assert bits == [1, 1685, 7820]
    with pytest.raises(AlphabetBudgetExceeded):
        recurse(SO, 3, [2, 3], cap_bits=2000)
    with pytest.raises(ValueError):
        recurse(SO, 3, [2])


def test_two_levels_local_equals_central():
    pgs = pad_levels(cycle(3), [GadgetSpec.uniform(2, 2), GadgetSpec.uniform(3, 1)], SO)
    assert [pg.graph.n for pg in pgs] == [21, 84]
    g, inputs = pgs[-1].graph, pgs[-1].inputs
    central = solve_levels(g, inputs, so_full_gather_solver(), SO, [2, 3])
    local = run(g, inputs, level_algorithm(so_full_gather_solver(), SO, [2, 3]))
    assert local == central
    assert recurse(SO, 3, [2, 3]).verify(g, inputs, central) == []
    vg, vin, vout, _ = extract_virtual_solution(g, inputs, central, 3)
    assert recurse(SO, 2, [2]).verify(vg, vin, vout) == []
    assert vg.n == 21


def test_non_port_status_is_free():
    pg = pad_graph(cycle(3), GadgetSpec.uniform(2, 1), base=SO)
    out = solve_and_check(pg.graph, pg.inputs, 2)
    v = pg.gadgets[1].center
    assert out.nodes[v].status == NO_PORT_ERR
    out.nodes[v] = out.nodes[v]._replace(status=PORT_ERR1)
    assert pi_prime_problem(SO, 2).verify(pg.graph, pg.inputs, out) == []
    out.nodes[v] = out.nodes[v]._replace(status=PORT_ERR2)
    assert pi_prime_problem(SO, 2).verify(pg.graph, pg.inputs, out)
