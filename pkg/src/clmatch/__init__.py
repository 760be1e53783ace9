"""Maximum bipartite matching with a catalytic tape.

Weights are read from borrowed memory.  When they isolate a matching of
every size the maximum matching is extracted directly; when they do not,
a redundant weight is compressed away and the loop retries.  The tape is
restored bit for bit before returning.
"""

from .driver import DriverConfig, RunReport, comp, decomp, run_clp_match
from .errors import (ClmatchError, ContractViolation, GraphTooLarge, InputError,
                     PreconditionViolation, PromiseViolation, TapeCorruption)
from .extensions import min_weight_max_matching
from .graph import BipartiteGraph, classify_components, read_graph, validate_matching, write_graph
from .isolation import extend_to_perfect, extract_isolated_size_k
from .lossy import LossyInstance, a2_extract, lossy_comp, lossy_decomp, lossy_solve
from .oracles import brute_force_matchings, hopcroft_karp
from .residual import build_residual, check_k_plus_1, find_threshold_edge, is_maximum, recover_weight
from .tape import CatalyticTape, TapeLayout, init_tape

__version__ = "0.1.0"

__all__ = [
    "BipartiteGraph", "CatalyticTape", "ClmatchError", "ContractViolation", "DriverConfig",
    "GraphTooLarge", "InputError", "LossyInstance", "PreconditionViolation", "PromiseViolation",
    "RunReport", "TapeCorruption", "TapeLayout", "a2_extract", "brute_force_matchings",
    "build_residual", "check_k_plus_1", "classify_components", "comp", "decomp",
    "extend_to_perfect", "extract_isolated_size_k", "find_threshold_edge", "hopcroft_karp",
    "init_tape", "is_maximum", "lossy_comp", "lossy_decomp", "lossy_solve",
    "min_weight_max_matching", "read_graph", "recover_weight", "run_clp_match",
    "validate_matching", "write_graph",
]
