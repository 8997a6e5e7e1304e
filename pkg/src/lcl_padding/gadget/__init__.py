"""Gadget construction, validity checks, error labelings and the algorithm that finds them."""

from .algorithm import algorithm_v, psi_g_transform, v_local
from .build import Gadget, GadgetError, GadgetSpec, build_gadget
from .check import check_gadget
from .mutate import MUTATION_KINDS, mutate_gadget, proven_valid
from .psi import psi_g_problem, psi_problem
from .search import search_error_labeling

__all__ = ["algorithm_v", "psi_g_transform", "v_local", "Gadget", "GadgetError", "GadgetSpec", "build_gadget",
           "check_gadget", "MUTATION_KINDS", "mutate_gadget", "proven_valid", "psi_g_problem", "psi_problem",
           "search_error_labeling"]
