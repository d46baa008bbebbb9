"""Exact and randomized analysis of linear extensions of grid posets.

A grid poset is a product of chains [a_1] x ... x [a_k] under the
componentwise order.  This package counts and enumerates its linear
extensions, samples them uniformly (exactly or by a lazy swap walk),
analyzes jumps and pits, builds the adjacent-swap graph, and evaluates
the closed-form bounds that govern these quantities, with vacuity made
explicit at desk scales.
"""

from ._version import __version__
from .bounds import (
    BoundReport,
    almost_regular_fraction,
    avg_degree_lower_bound,
    bound_reports,
    entropy_deficit_rate,
    factorial_convexity_holds,
    log_count_lower_bound,
    markov_tail_probability,
    pits_fraction_bound,
    pits_threshold,
)
from .counting import (
    DEFAULT_STATE_CAP,
    DownSet,
    completion_counts,
    count_extensions,
    count_root_window,
    factorial_product_lower_bound,
    hook_length_count,
    normalized_count_root,
    width_power_upper_bound,
)
from .errors import (
    DomainError,
    GridextError,
    InvalidExtensionError,
    ResourceCapError,
    ShapeMismatchError,
)
from .grid import (
    GridShape,
    Point,
    RankLevel,
    covers,
    leq,
    max_antichain_size,
    rank_levels,
    up_degree,
    whitney_numbers,
)
from .jumps import (
    JumpProfile,
    LinearExtension,
    PitsSequence,
    first_of_rank,
    jump_times,
    jumps,
    last_of_rank,
    pits_counts,
    pits_sequence,
    rank_lex_extension,
    rank_lex_indices,
    read_extensions_file,
    write_extensions_file,
)
from .sampling import (
    ChiSquareResult,
    EntropyProfile,
    ExactSampler,
    JumpStats,
    SamplerConfig,
    WordStream,
    chi_square_uniformity,
    empirical_jump_stats,
    entropy_profile_exact,
    exact_pits_deficit_fraction,
    exact_pits_deficit_fractions,
    jump_stats_from_orders,
    mcmc_ensemble,
    pits_deficit_fraction,
    pits_deficit_stats,
    sample_exact,
    sample_mcmc,
    sample_orders,
    tv_distance_from_uniform,
)
from .transposition import (
    DEFAULT_ENUM_CAP,
    GraphStats,
    TranspositionGraph,
    backtracking_count,
    build_graph,
    enumerate_extensions,
    enumerate_index_orders,
    exhaustive_mean_degree,
    graph_stats,
    to_dot,
)
from .verify import SUITES, CheckResult, SuiteReport, VerifyConfig, run_suite

__all__ = [
    "__version__",
    # errors
    "GridextError",
    "DomainError",
    "ShapeMismatchError",
    "InvalidExtensionError",
    "ResourceCapError",
    # grid
    "GridShape",
    "Point",
    "RankLevel",
    "leq",
    "covers",
    "up_degree",
    "rank_levels",
    "whitney_numbers",
    "max_antichain_size",
    # counting
    "DEFAULT_STATE_CAP",
    "DownSet",
    "completion_counts",
    "count_extensions",
    "hook_length_count",
    "factorial_product_lower_bound",
    "width_power_upper_bound",
    "normalized_count_root",
    "count_root_window",
    # extensions and jumps
    "LinearExtension",
    "JumpProfile",
    "PitsSequence",
    "jumps",
    "jump_times",
    "pits_sequence",
    "pits_counts",
    "rank_lex_indices",
    "rank_lex_extension",
    "first_of_rank",
    "last_of_rank",
    "read_extensions_file",
    "write_extensions_file",
    # enumeration and the swap graph
    "DEFAULT_ENUM_CAP",
    "TranspositionGraph",
    "GraphStats",
    "enumerate_index_orders",
    "enumerate_extensions",
    "backtracking_count",
    "exhaustive_mean_degree",
    "build_graph",
    "graph_stats",
    "to_dot",
    # sampling
    "SamplerConfig",
    "WordStream",
    "ExactSampler",
    "sample_exact",
    "sample_mcmc",
    "mcmc_ensemble",
    "sample_orders",
    "JumpStats",
    "jump_stats_from_orders",
    "empirical_jump_stats",
    "EntropyProfile",
    "entropy_profile_exact",
    "pits_deficit_fraction",
    "pits_deficit_stats",
    "exact_pits_deficit_fraction",
    "exact_pits_deficit_fractions",
    "ChiSquareResult",
    "chi_square_uniformity",
    "tv_distance_from_uniform",
    # bounds
    "BoundReport",
    "entropy_deficit_rate",
    "log_count_lower_bound",
    "avg_degree_lower_bound",
    "almost_regular_fraction",
    "pits_threshold",
    "pits_fraction_bound",
    "markov_tail_probability",
    "factorial_convexity_holds",
    "bound_reports",
    # verification
    "VerifyConfig",
    "CheckResult",
    "SuiteReport",
    "SUITES",
    "run_suite",
]
