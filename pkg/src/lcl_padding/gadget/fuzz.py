"""Seeded single-mutation fuzzing of gadgets against the checker and V."""

from __future__ import annotations

import numpy as np

from .algorithm import algorithm_v
from .build import GadgetSpec, build_gadget
from .check import check_gadget
from .mutate import applicable_kinds, mutate_gadget, proven_valid
from .psi import ERROR, psi_problem

# (delta, height) classes, cycled through by mutant index
FUZZ_SPECS = [(1, 1), (1, 2), (2, 1), (2, 2), (3, 2), (2, 3), (3, 3), (3, 4), (4, 4), (4, 5), (2, 6)]


def fuzz_one(gadget, index: int, seed: int) -> dict:
    """Mutate ``gadget`` once with the stream ``(seed, index)`` and judge the mutant.

    ``ok`` holds when the mutant is either flagged by the checker and V's
    output is accepted by the error verifier and contains an Error label, or
    unflagged and proven to still be a valid gadget.
    """
    delta = gadget.spec.delta
    rng = np.random.default_rng([seed, index])
    kinds = applicable_kinds(gadget)
    kind = kinds[int(rng.integers(len(kinds)))]
    mut = mutate_gadget(gadget, kind, rng)
    rec = {"index": index, "seed": seed, "spec": [delta, list(gadget.spec.heights)], "kind": kind,
           "detail": str(mut.detail)}
    flagged = bool(check_gadget(mut.graph, mut.labels, delta))
    rec["flagged"] = flagged
    if flagged:
        psi = algorithm_v(mut.graph, mut.labels, delta)
        rec["psi_accept"] = not psi_problem(delta).verify(mut.graph, mut.labels, psi)
        rec["has_error"] = any(x == ERROR for x in psi.nodes.values())
        rec["ok"] = rec["psi_accept"] and rec["has_error"]
    else:
        rec["proven_valid"] = proven_valid(gadget, mut.graph, mut.labels)
        rec["ok"] = rec["proven_valid"]
    return rec


def run_fuzz(count: int, seed: int = 0, specs=FUZZ_SPECS) -> list[dict]:
    """``count`` mutants, cycling through ``specs``; records are ordered by index."""
    cache: dict = {}
    out = []
    for i in range(count):
        spec = GadgetSpec.uniform(*specs[i % len(specs)])
        if spec not in cache:
            cache[spec] = build_gadget(spec)
        out.append(fuzz_one(cache[spec], i, seed))
    return out
