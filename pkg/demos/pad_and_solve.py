"""Pad a triangle twice, solve the top problem, and peel the levels back off.

    python demos/pad_and_solve.py
"""

from lcl_padding import cycle, sinkless_orientation, so_full_gather_solver
from lcl_padding.gadget import GadgetSpec
from lcl_padding.padding import extract_virtual_solution, recurse, solve_levels
from lcl_padding.padding.recursion import alphabet_bits, pad_levels


def main():
    so = sinkless_orientation()
    deltas = [2, 3]
    specs = [GadgetSpec.uniform(2, 2), GadgetSpec.uniform(3, 1)]
    levels = pad_levels(cycle(3), specs, so)
    for k, pg in enumerate(levels, start=1):
        print(f"level {k}: {pg.graph.n} nodes, {pg.graph.m} edges, gadgets of {specs[k - 1].size} nodes")

    g, inputs = levels[-1].graph, levels[-1].inputs
    top = recurse(so, 3, deltas)
    print(f"top problem needs {alphabet_bits(top)} bits per label")
    out = solve_levels(g, inputs, so_full_gather_solver(), so, deltas)
    print("top verifier:", top.verify(g, inputs, out) or "accepted")

    for k in (2, 1):
        g, inputs, out, members = extract_virtual_solution(g, inputs, out, deltas[k - 1])
        prob = recurse(so, k, deltas)
        print(f"peeled to {g.n} nodes ({prob.name}):", prob.verify(g, inputs, out) or "accepted")
    print("orientation on the triangle:",
          {v: [out.halves[h] for h in g.ports(v)] for v in g.nodes()})


if __name__ == "__main__":
    main()
