"""Exact k-clique counts of weighted graph blow-ups, weight shifting, and
minimisers of the clique count over m-weightings."""

from .blowup import (
    BlowupGraph,
    BudgetExceeded,
    Weighting,
    build_blowup,
    count_cliques_formula,
    count_cliques_oracle,
    count_edges_formula,
    is_uniform_alpha,
    uniform_weighting,
)
from .families import (
    LevelMatching,
    MultipartiteSpec,
    SpernerGraph,
    build_multipartite,
    build_sperner,
    complement_weighting,
    hall_level_matching,
    middle_level,
)
from .graph import (
    CliqueSet,
    EliminationOrdering,
    Graph,
    enumerate_cliques,
    find_elimination_ordering,
    is_independent,
    max_independent_set,
    max_k_clique_independent_set,
)
from .reports import VerificationReport
from .search import (
    SearchResult,
    ShiftTrace,
    brute_force_min,
    conjecture_sweep,
    minimize_chordal,
    minimize_multipartite,
    minimize_sperner,
    strict_gap_check,
)
from .shifting import (
    ShiftSpec,
    ShiftValidation,
    build_injection_certificate,
    katona_best_edge_shift,
    multi_shift,
    shift_edge,
    validate_shift,
)

__version__ = "0.1.0"
