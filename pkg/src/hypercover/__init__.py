"""Covering thresholds for 3-uniform hypergraphs: exact kernels, pattern
detectors, extremal constructions and pruned exhaustive search."""

from .core import (
    GraphFormatError,
    InvalidArgument,
    ThreeGraph,
    TwoGraph,
    complete,
    degree,
    dumps,
    induced,
    link_graph,
    loads,
    min_degree,
    parse_graph,
    triple_index,
    triple_unindex,
)
from .canon import canonical_form, canonical_labelling, is_isomorphic
from .matching import (
    BookClass,
    classify_no3matching,
    erdos_gallai_bound,
    longest_cycle_length,
    matching_number,
    max_matching,
)
from .patterns import (
    CoverReport,
    Pattern,
    covers_P2_center,
    covers_P3_position2,
    covers_Pk,
    covers_Sk,
    covers_Sk_center,
    covers_T,
    find_rooted_embedding,
    generalized_triangle,
    has_F_covering,
    linear_path,
    resolve_pattern,
    star,
)
from .constructions import ConstructionSpec, build, construction_from_name, verify_observation
from .search import (
    Budget,
    OutcomeKind,
    SearchOutcome,
    SearchTask,
    audit_theorem,
    compute_threshold_exact,
    enumerate_threegraphs,
    find_witness,
    random_threegraph,
)

__version__ = "0.1.0"

__all__ = [
    "GraphFormatError",
    "InvalidArgument",
    "ThreeGraph",
    "TwoGraph",
    "complete",
    "degree",
    "dumps",
    "induced",
    "link_graph",
    "loads",
    "min_degree",
    "parse_graph",
    "triple_index",
    "triple_unindex",
    "BookClass",
    "classify_no3matching",
    "erdos_gallai_bound",
    "longest_cycle_length",
    "matching_number",
    "max_matching",
    "CoverReport",
    "Pattern",
    "covers_P2_center",
    "covers_P3_position2",
    "covers_Pk",
    "covers_Sk",
    "covers_Sk_center",
    "covers_T",
    "find_rooted_embedding",
    "generalized_triangle",
    "has_F_covering",
    "linear_path",
    "resolve_pattern",
    "star",
    "Budget",
    "OutcomeKind",
    "SearchOutcome",
    "SearchTask",
    "audit_theorem",
    "compute_threshold_exact",
    "enumerate_threegraphs",
    "find_witness",
    "random_threegraph",
    "canonical_form",
    "canonical_labelling",
    "is_isomorphic",
    "ConstructionSpec",
    "build",
    "construction_from_name",
    "verify_observation",
]
