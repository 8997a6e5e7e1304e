"""Break a gadget in a few ways and look at how V points every node towards the damage.

    python demos/gadget_errors.py --delta 2 --height 3 --seed 4
"""

import argparse
from collections import Counter

import numpy as np

from lcl_padding.gadget import (MUTATION_KINDS, GadgetSpec, algorithm_v, build_gadget, check_gadget, mutate_gadget,
                                psi_g_problem, psi_g_transform, psi_problem, search_error_labeling)
from lcl_padding.gadget.psi import ERROR


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--delta", type=int, default=2)
    ap.add_argument("--height", type=int, default=3)
    ap.add_argument("--seed", type=int, default=4)
    args = ap.parse_args()

    gad = build_gadget(GadgetSpec.uniform(args.delta, args.height))
    print(f"gadget: {gad.graph.n} nodes, center {gad.center}, ports {gad.ports}")
    print("V on the intact gadget:", Counter(algorithm_v(gad.graph, gad.labels, args.delta).nodes.values()))
    print("all-error labeling on the intact gadget:",
          search_error_labeling(gad.graph, gad.labels, args.delta))

    rng = np.random.default_rng(args.seed)
    for kind in MUTATION_KINDS:
        m = mutate_gadget(gad, kind, rng)
        bad = check_gadget(m.graph, m.labels, args.delta)
        print(f"\n{kind}: {m.detail}")
        if not bad:
            print("  still a valid gadget")
            continue
        print(f"  failed checks: {sorted({c for _, c in bad})} at nodes {sorted({v for v, _ in bad})}")
        psi = algorithm_v(m.graph, m.labels, args.delta)
        print(f"  V output: {dict(Counter(psi.nodes.values()))}")
        print(f"  error problem accepts: {not psi_problem(args.delta).verify(m.graph, m.labels, psi)}")
        proof = psi_g_transform(m.graph, m.labels, args.delta, dict(psi.nodes))
        certs = Counter(x.cert[0] for x in proof.nodes.values() if x.main == ERROR)
        print(f"  certificates: {dict(certs)}; node-edge form accepts: "
              f"{not psi_g_problem(args.delta).verify(m.graph, m.labels, proof)}")


if __name__ == "__main__":
    main()
