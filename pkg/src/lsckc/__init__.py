"""k-center clustering under cannot-link / must-link constraints.

Threshold-based local search with a 2-approximation guarantee for disjoint
cannot-link sets, plus an exact oracle, baselines, a planted-instance
generator and a benchmark harness.
"""

from .assign import Assignment, assign, clustering_cost, verify
from .baselines import exact_opt, gonzalez, greedy_constrained
from .constraints import (
    CLSet,
    ConstraintSystem,
    InfeasibleConstraintsError,
    MLSet,
    effective_distance,
    normalize,
    validate,
)
from .driver import Solution, solve
from .instance import Instance
from .matching import (
    Matching,
    ThresholdBipartiteGraph,
    build_threshold_graph,
    dms_check,
    maximum_matching,
)
from .metric import Dataset, Point, candidate_radii, distance, dist_to_set
from .seeding import seed_centers
from .solver import (
    ProbeResult,
    SwapCandidate,
    cl_candidate_centers,
    coverage_feasible,
    find_enhanced_swap,
    local_search,
    solve_with_threshold,
)
from .synthgen import GenParams, generate

__version__ = "0.1.0"
