"""Rainbow-time benchmarks for quantum architecture graphs."""

__version__ = "0.1.0"

from .errors import RainbowError
from .graph import Graph, boundary_weight, is_connected_induced, lambda2, laplacian, new_graph, t_ratio
from .isoperimetric import (
    RainbowReport,
    rainbow_time_exact,
    rainbow_time_spectral,
    rounds_required,
    spectral_bounds,
    unrestricted_rainbow_time,
)
from .hierarchy import compare_to_grid, hierarchy_rainbow_time, hp_rainbow_time, kn_hierarchy_rainbow_time
from .capacity import CapacityQuery, capacity_bell, capacity_hamiltonian, capacity_unitary, min_rounds_for_target
from .flow import build_flow_network, decompose_paths, max_flow, min_cut_bruteforce
from .protocol import ProtocolTrace, run_protocol, simulate_trace, verify_trace

# after the submodule imports, so the `hierarchy` builder wins over the `hierarchy` module name
from .families import complete, cycle, generate, graph_stats, grid, hierarchical_product, hierarchy, path, star

__all__ = [
    "RainbowError", "Graph", "boundary_weight", "is_connected_induced", "lambda2", "laplacian",
    "new_graph", "t_ratio", "complete", "cycle", "generate", "graph_stats", "grid",
    "hierarchical_product", "hierarchy", "path", "star", "RainbowReport", "rainbow_time_exact",
    "rainbow_time_spectral", "rounds_required", "spectral_bounds", "unrestricted_rainbow_time",
    "compare_to_grid", "hierarchy_rainbow_time", "hp_rainbow_time", "kn_hierarchy_rainbow_time",
    "CapacityQuery", "capacity_bell", "capacity_hamiltonian", "capacity_unitary",
    "min_rounds_for_target", "build_flow_network", "decompose_paths", "max_flow",
    "min_cut_bruteforce", "ProtocolTrace", "run_protocol", "simulate_trace", "verify_trace",
]
