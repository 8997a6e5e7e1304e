import pytest
from hypothesis import given
from hypothesis import strategies as st

from lcl_padding import codec
from lcl_padding.graph import cycle, graph_from_pairs
from lcl_padding.local import (LocalAlgorithm, RandomTape, RunError, SolverFailure, constant_rule, measure_locality,
                               run, star_output)
from lcl_padding.nelcl import sinkless_orientation, so_full_gather_solver


def test_full_gather_orients_triangle():
    g = cycle(3)
    out = run(g, None, so_full_gather_solver(), seed=7)
    assert sinkless_orientation().verify(g, None, out) == []
    assert all(any(out.halves[h] == "out" for h in g.ports(v)) for v in g.nodes())


def test_runs_are_byte_identical():
    g = graph_from_pairs(5, [(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 5)])
    a = run(g, None, so_full_gather_solver(), seed=3)
    b = run(g, None, so_full_gather_solver(), seed=3)
    assert codec.encode(g, {"output": a}) == codec.encode(g, {"output": b})


def test_tree_component_is_declared_failure():
    with pytest.raises(SolverFailure):
        run(graph_from_pairs(2, [(1, 2)]), None, so_full_gather_solver())


def test_small_radius_gives_rejected_output():
    g = cycle(8)
    out = run(g, None, so_full_gather_solver().with_radius(1))
    assert sinkless_orientation().verify(g, None, out)


def test_measure_locality_on_cycle():
    g = cycle(6)
    t = measure_locality(g, None, sinkless_orientation(), lambda t: so_full_gather_solver().with_radius(t), 20)
    assert t == 3  # the antipode's two edges are seen from its distance-2 neighbors
    assert measure_locality(g, None, sinkless_orientation(),
                            lambda t: so_full_gather_solver().with_radius(t), 2) is None


@given(st.integers(0, 2**40), st.integers(1, 1000))
def test_random_tape_is_reproducible(seed, node):
    a, b = RandomTape(seed, node), RandomTape(seed, node)
    assert a.rng.integers(1 << 30, size=4).tolist() == b.rng.integers(1 << 30, size=4).tolist()


def test_tapes_differ_between_nodes():
    xs = {tuple(RandomTape(5, v).rng.integers(1 << 30, size=3)) for v in range(1, 20)}
    assert len(xs) == 19


def test_disagreeing_edge_labels_raise():
    def rule(view, n, delta, tape):
        return star_output(view, None, {h: view.root for h in view.graph.ports(view.root)})

    with pytest.raises(RunError, match="disagree"):
        run(cycle(3), None, LocalAlgorithm("bad", lambda n: 1, rule))


def test_out_of_alphabet_output_raises():
    alg = constant_rule(half_label="sideways")
    alg = LocalAlgorithm(alg.name, alg.radius, alg.rule, sinkless_orientation().outputs)
    with pytest.raises(RunError, match="alphabet"):
        run(cycle(3), None, alg)


def test_rule_sees_only_its_ball():
    seen = {}

    def rule(view, n, delta, tape):
        seen[view.root] = set(view.graph.nodes())
        return star_output(view, None)

    run(cycle(7), None, LocalAlgorithm("probe", lambda n: 2, rule))
    assert seen[1] == {6, 7, 1, 2, 3}
