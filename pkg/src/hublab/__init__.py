"""hublab: build, verify, and compare hub labelings of weighted graphs.

Covers exact distance infrastructure, canonical hierarchical labelings, the
three greedy center-graph algorithms, the set-cover approximation with densest
subgraph selection, brute-force optimality oracles, highway-dimension
machinery, and generators for the adversarial instance families.
"""

from . import families
from .centers import (
    CenterGraph,
    CoverageState,
    EmptyCenterGraphError,
    LevelProfile,
    NEG_INF_LEVEL,
    UncoveredSet,
    build_center_graph,
    density,
    initial_uncovered,
    level_profile,
    make_pair,
    pair_level,
)
from .cohen import mds_peel, run_cohen_hl
from .graphs import (
    INF,
    DistMatrix,
    Graph,
    GraphFormatError,
    UnreachablePairError,
    all_pairs_distances,
    on_shortest_path,
    parse_graph,
    path_membership,
    serialize_graph,
    shortest_path_vertices,
    undirect,
)
from .greedy import (
    IterationRecord,
    RunTrace,
    TraceNotFromDHHLError,
    run_d_hhl,
    run_g_hhl,
    run_w_hhl,
    vertex_levels,
)
from .highway import (
    CapExceededError,
    DhhlLevelAudit,
    DirectedInputError,
    InvalidSPHSError,
    MultiscaleSPHS,
    SignificantPath,
    audit_dhhl_levels,
    ball,
    enumerate_significant_paths,
    greedy_multiscale_sphs,
    is_sphs,
    neighborhood_S,
    sphs_to_hhl,
)
from .labeling import (
    CoverReport,
    LabelFormatError,
    Labeling,
    Order,
    canonical_hhl,
    is_sublabeling,
    labeling_size,
    parse_labeling,
    query,
    respects_order,
    serialize_labeling,
    verify_cover,
)
from .oracles import (
    HlBnbResult,
    TooLargeError,
    exact_mds,
    highway_dimension_bruteforce,
    min_hitting_set,
    min_vertex_cover,
    optimal_hhl_bruteforce,
    optimal_hl_bnb,
)

__version__ = "0.1.0"

__all__ = [
    "CapExceededError",
    "CenterGraph",
    "CoverReport",
    "CoverageState",
    "DhhlLevelAudit",
    "DirectedInputError",
    "DistMatrix",
    "EmptyCenterGraphError",
    "Graph",
    "GraphFormatError",
    "HlBnbResult",
    "INF",
    "InvalidSPHSError",
    "IterationRecord",
    "LabelFormatError",
    "Labeling",
    "LevelProfile",
    "MultiscaleSPHS",
    "NEG_INF_LEVEL",
    "Order",
    "RunTrace",
    "SignificantPath",
    "TooLargeError",
    "TraceNotFromDHHLError",
    "UncoveredSet",
    "UnreachablePairError",
    "all_pairs_distances",
    "audit_dhhl_levels",
    "ball",
    "build_center_graph",
    "canonical_hhl",
    "density",
    "enumerate_significant_paths",
    "exact_mds",
    "families",
    "greedy_multiscale_sphs",
    "highway_dimension_bruteforce",
    "initial_uncovered",
    "is_sphs",
    "is_sublabeling",
    "labeling_size",
    "level_profile",
    "make_pair",
    "mds_peel",
    "min_hitting_set",
    "min_vertex_cover",
    "neighborhood_S",
    "on_shortest_path",
    "optimal_hhl_bruteforce",
    "optimal_hl_bnb",
    "pair_level",
    "parse_graph",
    "parse_labeling",
    "path_membership",
    "query",
    "respects_order",
    "run_cohen_hl",
    "run_d_hhl",
    "run_g_hhl",
    "run_w_hhl",
    "serialize_graph",
    "serialize_labeling",
    "shortest_path_vertices",
    "sphs_to_hhl",
    "undirect",
    "verify_cover",
    "vertex_levels",
]
