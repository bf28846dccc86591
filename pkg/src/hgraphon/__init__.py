"""Step-graphon analysis toolkit.

Exact condition checks (odd cycle, edge-polytope membership and relative
interior), seeded graph sampling, Hamiltonian-decomposition decisions, and
a reproducible Monte Carlo runner for the limit probabilities.
"""

from .conditions import (
    BORDERLINE,
    BOUNDARY,
    H_PROPERTY,
    NO_H_PROPERTY,
    OUTSIDE,
    RELATIVE_INTERIOR,
    ConditionReport,
    DimensionMismatch,
    MembershipResult,
    classify,
    has_odd_cycle,
    line_inequalities,
    polytope_membership,
    polytope_rank,
)
from .core import (
    AsymmetricValues,
    DisconnectedSkeleton,
    EndpointViolation,
    GraphonError,
    IncidenceMatrix,
    MalformedGraphon,
    NonMonotonePartition,
    NotALineGraphon,
    SkeletonGraph,
    StepGraphon,
    ValueOutOfRange,
    concentration_vector,
    incidence_matrix,
    is_connected,
    is_line_graphon,
    line_order,
    load_graphon,
    save_graphon,
    skeleton_graph,
    validate_graphon,
)
from .hamdec import (
    ConstructionResult,
    HamiltonianDecomposition,
    TooLarge,
    brute_force_hd,
    construct_line_decomposition,
    er_hamiltonian_decomposition,
    find_triangle,
    has_hamiltonian_decomposition,
    verify_decomposition,
)
from .matching import LeftLargerThanRight, Matching, MatchingResult, left_perfect_matching
from .montecarlo import (
    Estimate,
    ExperimentConfig,
    NotTwoBlocks,
    TrialRecord,
    conditional_split,
    run_trials,
    trial_seed,
    wilson_interval,
)
from .sampling import (
    SampledGraph,
    empirical_concentration,
    group_counts,
    load_graph,
    sample_graph,
    sample_group_counts,
    save_graph,
)

__version__ = "0.1.0"
