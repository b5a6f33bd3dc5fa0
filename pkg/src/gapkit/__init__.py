"""Gap-reduction toolkit: 3-SAT reductions to clique, set cover, Min-Rep and
minimum maximal independent set, with exact oracles and a gap harness."""

from .errors import CapExceeded, GapkitError
from .graph import SimpleGraph, graph_power, max_clique_exact, mmis_exact
from .harness import GapReport, PipelineConfig, RtFunction, check_gap_condition, run_pipeline
from .sat import CnfInstance, max_sat_bruteforce, parse_dimacs
from .setcover import SetCoverInstance, setcover_exact, setcover_greedy

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "CnfInstance",
    "GapReport",
    "GapkitError",
    "PipelineConfig",
    "RtFunction",
    "SetCoverInstance",
    "SimpleGraph",
    "check_gap_condition",
    "graph_power",
    "max_clique_exact",
    "max_sat_bruteforce",
    "mmis_exact",
    "parse_dimacs",
    "run_pipeline",
    "setcover_exact",
    "setcover_greedy",
]
