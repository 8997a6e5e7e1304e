"""How far must a node look to solve the padded problem, as gadgets get taller?

Pads a cycle with gadgets of growing height and binary-searches the smallest
radius at which the lifted solver's output verifies. The inner sinkless
orientation solver keeps a fixed radius, so the growth comes from padding.

    python demos/locality_sweep.py --cycle 6 --max-height 5
"""

import argparse

from lcl_padding import cycle, sinkless_orientation, so_full_gather_solver
from lcl_padding.gadget import GadgetSpec, build_gadget
from lcl_padding.graph import hop_distance
from lcl_padding.local import measure_locality
from lcl_padding.padding import pad_graph, pi_prime_algorithm, pi_prime_problem


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cycle", type=int, default=6)
    ap.add_argument("--delta", type=int, default=2)
    ap.add_argument("--max-height", type=int, default=4)
    ap.add_argument("--inner-radius", type=int, default=3)
    args = ap.parse_args()

    so = sinkless_orientation()
    inner = so_full_gather_solver().with_radius(args.inner_radius)
    print(f"{'h':>2} {'nodes':>6} {'port gap':>8} {'T_min':>6}")
    for h in range(1, args.max_height + 1):
        gad = build_gadget(GadgetSpec.uniform(args.delta, h))
        gap = hop_distance(gad.graph, gad.ports[1], gad.ports[2]) if args.delta > 1 else 0
        pg = pad_graph(cycle(args.cycle), GadgetSpec.uniform(args.delta, h), base=so)
        t = measure_locality(pg.graph, pg.inputs, pi_prime_problem(so, args.delta),
                             lambda t: pi_prime_algorithm(so, args.delta, inner, radius=t), 256)
        print(f"{h:>2} {pg.graph.n:>6} {gap:>8} {t if t is not None else '-':>6}")


if __name__ == "__main__":
    main()
