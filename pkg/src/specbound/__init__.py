"""Spectral bound verification for finite graphs.

Builds unraveled balls and weighted spectra, certifies ball-deletion
robustness, and numerically verifies a family of eigenvalue bounds,
including an executable replica of the test-vector argument behind the
unraveled-ball lower bound.
"""

from .bounds import (
    BoundVerdict,
    alon_boppana_rhs,
    coro1_rhs,
    coro2_trend,
    hoory_rhs,
    jiang_rhs,
    norm_ab_rhs,
    thm1_rhs,
    verify_coro1,
    verify_lemma4,
    verify_thm1,
    verify_thm2,
    verify_thm3,
    young_rhs,
)
from .cover import (
    UnraveledBall,
    WalkForest,
    all_nb_edge_walks,
    covering_map_check,
    nb_walks,
    tree_canonical_form,
    trees_isomorphic,
    unraveled_ball,
    walk_forest,
)
from .errors import (
    ConvergenceError,
    InputError,
    NumericError,
    PreconditionError,
    ResourceLimitError,
    SpecboundError,
)
from .graph import (
    EdgeWeights,
    Graph,
    VertexWeighting,
    average_degree,
    ball,
    connected_components,
    delete_ball,
    induced_subgraph,
    parse_edge_list,
    format_edge_list,
    second_order_average_degree,
    two_core,
)
from .prooflab import (
    IdentityReport,
    NbChainFacts,
    TestVector,
    build_test_vector,
    chain_facts,
    identity_suite,
    nb_transition_check,
)
from .robustness import (
    RobustnessCertificate,
    check_robust,
    max_robust_params,
    r_robust_average_degree,
)
from .spectra import (
    ClosedWalkTable,
    Spectrum,
    closed_walk_weight,
    normalized_laplacian_spectrum,
    normalized_weights,
    path_spectral_data,
    rayleigh_quotient,
    spectral_radius,
    spectrum,
    weighted_adjacency,
)

__version__ = "0.1.0"
