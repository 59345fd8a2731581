"""Pareto optimization for budget-constrained monotone submodular maximization.

GSEMO and its sliding-window variant, the maximum-coverage benchmark problem,
theorem-derived iteration budgets, and a seeded experiment harness.
"""

from .algorithms import (AlgorithmConfig, RunResult, SelectionEvent, TracePoint, gsemo_run,
                         recommended_tmax_general, recommended_tmax_uniform, sliding_selection,
                         sw_gsemo_run)
from .core import BitVector, Dominance, Individual, ObjectiveVector, ParetoArchive, dominates
from .experiments import (ExperimentConfig, ExperimentReport, SettingRecord, derive_seed,
                          export_front, resolve_budget, run_experiment)
from .graphio import Graph, GraphParseError, assign_costs, closed_neighborhoods, load_graph, \
    parse_edge_list, serialize_edge_list
from .mutation import (make_rng, standard_bit_mutation, standard_bit_mutation_plus)
from .problems import (CostModel, CoverageInstance, MinMarginalGain, ProblemInstance,
                       brute_force_optimum, min_marginal_gain, submodularity_ratio_bruteforce)
from .stats import mann_whitney_u, summarize

__version__ = "0.1.0"

__all__ = [
    "AlgorithmConfig", "BitVector", "CostModel", "CoverageInstance", "Dominance",
    "ExperimentConfig", "ExperimentReport", "Graph", "GraphParseError", "Individual",
    "MinMarginalGain", "ObjectiveVector", "ParetoArchive", "ProblemInstance", "RunResult",
    "SelectionEvent", "SettingRecord", "TracePoint", "assign_costs", "brute_force_optimum",
    "closed_neighborhoods", "derive_seed", "dominates", "export_front", "gsemo_run",
    "load_graph", "make_rng", "mann_whitney_u", "min_marginal_gain", "parse_edge_list",
    "recommended_tmax_general", "recommended_tmax_uniform", "resolve_budget",
    "run_experiment", "serialize_edge_list", "sliding_selection", "standard_bit_mutation",
    "standard_bit_mutation_plus", "submodularity_ratio_bruteforce", "summarize",
    "sw_gsemo_run",
]
