"""Pliable index coding toolkit.

Complete size-profile instances, linear broadcast codes over prime fields,
decodability verification, converse bounds with closed forms, topology
hypergraph machinery including the circular-arc two-transmission scheme,
and the combinatorial oracles behind the converse arguments.
"""

from .bounds import (
    BoundReport,
    ChainBoundResult,
    best_chain_bound,
    chain_bound,
    closed_form_length,
    full_report,
    mais,
    min_mais_lower_bound,
    small_m_table_rows,
    unicast_expansion,
)
from .coding import (
    LinearCode,
    PartitionPlan,
    build_partition_scheme,
    default_field,
    mds_rows,
    optimal_partition,
    part_cost,
    smallest_prime_at_least,
    unit_rows,
)
from .errors import (
    CapExceeded,
    FieldTooSmall,
    NotAFactor,
    PicodError,
    SearchOverflow,
)
from .hypergraph import (
    CircularArcTrace,
    Hypergraph,
    circular_arc_scheme,
    circular_arc_scheme_with_trace,
    dual,
    has_one_factor,
    network_topology,
    one_transmission_code,
    verify_circular_arc,
)
from .instance import (
    Instance,
    InstanceViolation,
    SizeProfile,
    assignment_count,
    build_complete_s,
    enumerate_assignments,
    instance_from_json,
    instance_to_json,
    validate_assignment,
    validate_instance,
)
from .oracles import (
    BlockCover,
    block_cover_impossibility,
    brute_intersection_family_witness,
    check_block_cover,
    averaging_pair,
    intersection_family_witness,
    random_averaging_suite,
    sweep_intersection_families,
    verify_intersection_witness,
)
from .verifier import (
    DecodabilityReport,
    decodable_closure,
    induced_assignment,
    is_valid,
    min_linear_length_exhaustive,
)

__all__ = [
    "BlockCover",
    "BoundReport",
    "CapExceeded",
    "ChainBoundResult",
    "CircularArcTrace",
    "DecodabilityReport",
    "FieldTooSmall",
    "Hypergraph",
    "Instance",
    "InstanceViolation",
    "LinearCode",
    "NotAFactor",
    "PartitionPlan",
    "PicodError",
    "SearchOverflow",
    "SizeProfile",
    "assignment_count",
    "best_chain_bound",
    "block_cover_impossibility",
    "brute_intersection_family_witness",
    "build_complete_s",
    "build_partition_scheme",
    "chain_bound",
    "check_block_cover",
    "circular_arc_scheme",
    "circular_arc_scheme_with_trace",
    "closed_form_length",
    "averaging_pair",
    "decodable_closure",
    "default_field",
    "dual",
    "enumerate_assignments",
    "full_report",
    "has_one_factor",
    "induced_assignment",
    "instance_from_json",
    "instance_to_json",
    "intersection_family_witness",
    "is_valid",
    "mais",
    "mds_rows",
    "min_linear_length_exhaustive",
    "min_mais_lower_bound",
    "network_topology",
    "one_transmission_code",
    "optimal_partition",
    "part_cost",
    "random_averaging_suite",
    "small_m_table_rows",
    "smallest_prime_at_least",
    "sweep_intersection_families",
    "unicast_expansion",
    "unit_rows",
    "validate_assignment",
    "validate_instance",
    "verify_circular_arc",
    "verify_intersection_witness",
]

__version__ = "0.1.0"
