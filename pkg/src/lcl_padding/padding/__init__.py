"""Padded graphs, the lifted problem, its solvers and the level-by-level recursion."""

from .hard import HardInstance, hard_instance
from .pad import PaddedGraph, pad_graph
from .problem import pi_prime_problem
from .recursion import recurse, solve_levels
from .solve import extract_virtual_solution, pi_prime_algorithm, solve_pi_prime

__all__ = ["HardInstance", "hard_instance", "PaddedGraph", "pad_graph", "pi_prime_problem", "recurse",
           "solve_levels", "extract_virtual_solution", "pi_prime_algorithm", "solve_pi_prime"]
