"""Padding of locally checkable labeling problems with tree-like gadgets, plus a LOCAL-model lab."""

from .graph import Endpoint, GraphError, HalfEdge, Labeling, PortedMultigraph, View, ball, cycle, graph_from_pairs
from .local import LocalAlgorithm, RandomTape, SolverFailure, measure_locality, run
from .nelcl import (NeLclProblem, Sigma, Violation, enumerate_solutions, get_problem, sinkless_orientation,
                    so_full_gather_solver, so_oracle, verify)

__all__ = [
    "Endpoint", "GraphError", "HalfEdge", "Labeling", "PortedMultigraph", "View", "ball", "cycle",
    "graph_from_pairs", "LocalAlgorithm", "RandomTape", "SolverFailure", "measure_locality", "run",
    "NeLclProblem", "Sigma", "Violation", "enumerate_solutions", "get_problem", "sinkless_orientation",
    "so_full_gather_solver", "so_oracle", "verify",
]
