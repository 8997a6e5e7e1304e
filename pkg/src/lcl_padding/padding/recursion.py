"""Repeated padding: a chain of problems, instances padded level by level, and matching solvers."""

from __future__ import annotations

from typing import Sequence

from ..gadget.build import GadgetSpec
from ..graph import Labeling, PortedMultigraph
from ..local import LocalAlgorithm
from ..nelcl import NeLclProblem
from .pad import PaddedGraph, pad_graph
from .problem import pi_prime_problem
from .solve import pi_prime_algorithm, solve_pi_prime


class AlphabetBudgetExceeded(ValueError):
    pass


def alphabet_bits(problem: NeLclProblem) -> int:
    """Bits needed for the largest label set of ``problem``."""
    return max(0, problem.alphabet_size() - 1).bit_length()


def recurse(base: NeLclProblem, k: int, deltas: Sequence[int], cap_bits: int | None = None) -> NeLclProblem:
    """Level ``k`` of the chain: level 1 is ``base``, level i+1 pads level i with ``deltas[i-1]``."""
    if k < 1:
        raise ValueError("levels start at 1")
    if len(deltas) < k - 1:
        raise ValueError(f"need {k - 1} gadget degrees, got {len(deltas)}")
    prob = base
    for i in range(k - 1):
        prob = pi_prime_problem(prob, deltas[i])
        if cap_bits is not None and alphabet_bits(prob) > cap_bits:
            raise AlphabetBudgetExceeded(f"level {i + 2} needs {alphabet_bits(prob)} bits > cap {cap_bits}")
    return prob


def pad_levels(h: PortedMultigraph, specs: Sequence[GadgetSpec], base: NeLclProblem) -> list[PaddedGraph]:
    """Pad ``h`` once per spec; each level's graph and inputs become the next level's base."""
    out = []
    g, inputs, prob = h, None, base
    for spec in specs:
        pg = pad_graph(g, spec, base_inputs=inputs, base=prob)
        out.append(pg)
        g, inputs = pg.graph, pg.inputs
        prob = pi_prime_problem(prob, spec.delta)
    return out


def level_algorithm(base_solver: LocalAlgorithm, base: NeLclProblem, deltas: Sequence[int]) -> LocalAlgorithm:
    """Local solver for the top of the chain built over ``base`` with ``deltas``."""
    alg, prob = base_solver, base
    for d in deltas:
        alg = pi_prime_algorithm(prob, d, alg)
        prob = pi_prime_problem(prob, d)
    return alg


def solve_levels(g: PortedMultigraph, inputs: Labeling, base_solver: LocalAlgorithm, base: NeLclProblem,
                 deltas: Sequence[int], seed: int = 0) -> Labeling:
    """Centralized top-level solve; lower levels run as local solvers on the virtual graph."""
    if not deltas:
        raise ValueError("at least one padding level is required")
    inner = level_algorithm(base_solver, base, deltas[:-1])
    below = recurse(base, len(deltas), deltas[:-1])
    return solve_pi_prime(g, inputs, below, deltas[-1], inner, seed=seed)
