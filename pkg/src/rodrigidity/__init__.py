"""Infinitesimal rigidity of planar rod configurations.

A rod configuration realizes a rank-two incidence geometry as straight rigid
segments pinned together at shared points.  This package decides whether such
a configuration is infinitesimally rigid two ways: combinatorially, by
playing the (2,3)-pebble game on a cone graph of the geometry, and
algebraically, by computing the exact rank of the concurrence matrix of a
randomly sampled exact realization.  The two verdicts certify each other.
"""

from .geometry import (
    GeometryError,
    GeometryParseError,
    IncidenceGeometry,
    SubsetSupport,
    geometry_from_json,
    geometry_to_json,
    is_connected,
    load_geometry,
    parse_geometry,
    remove_line,
    serialize_geometry,
    support_of,
)
from .cone import (
    ConeGraph,
    ConeIncidenceGeometry,
    build_cone_graph,
    build_cone_incidence,
    cone_graph_to_dot,
    reassign_inner_vertex,
)
from .pebble import (
    PebbleState,
    PebbleVerdict,
    independent_after,
    new_state,
    play,
    try_edge,
)
from .oracle import (
    ALTERNATE_PRIME,
    BudgetExceededError,
    DEFAULT_FIELD,
    Infeasible,
    LinearRealization,
    MERSENNE_PRIME,
    OracleError,
    PrimeField,
    RATIONALS,
    RationalField,
    VerticalLineError,
    build_concurrence_matrix,
    concurrence_to_csv,
    is_regular,
    is_sharply_independent,
    is_sharply_independent_fast,
    is_string_config_rigid,
    kernel_witnesses,
    matrix_kernel,
    matrix_rank,
    rank_of,
    realization_from_coords,
    realization_from_json,
    realization_to_json,
    realize_cone,
    sample_realization,
    trivial_realization,
)
from .analysis import (
    CampaignReport,
    CanonicalSubgraph,
    DEFAULT_SEED,
    MinimalRigidityReport,
    OracleDisagreementError,
    RigidityVerdict,
    canonical_edge_order,
    canonical_subgraph,
    check_body_joint_counts,
    decide_minimal_rigidity,
    decide_rod_rigidity,
    derive_subgeometry,
    inner_choice_classifications,
    random_geometry,
    restrict_realization,
    run_agreement_campaign,
    verdict_to_json,
)

__version__ = "0.1.0"
