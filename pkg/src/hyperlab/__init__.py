"""Hausdorff hyperspace toolkit for finite metric spaces.

Core layers:

* :mod:`hyperlab.space`: validated finite metric spaces, subset handles,
  isolation/neighborhood functionals and scale diagnostics;
* :mod:`hyperlab.hausdorff`: directed and symmetric Hausdorff distances with
  a naive oracle and an early-break kernel (compiled when available);
* :mod:`hyperlab.hyperspace`: materialized hyperspaces, induced maps,
  moduli of continuity, collection diagnostics;
* :mod:`hyperlab.families`: canonical example-space generators;
* :mod:`hyperlab.fixedpoint`: residuals and staged fixed-point searches;
* :mod:`hyperlab.suites` and :mod:`hyperlab.cli`: named verification suites,
  reports, benchmark harness.
"""

from .hausdorff import (
    BACKEND,
    CoordSet,
    directed_hausdorff,
    hausdorff_early_break,
    hausdorff_early_break_stats,
    hausdorff_naive,
    pairwise_hausdorff_table,
)
from .space import (
    INFINITY,
    AtsujiProfile,
    FiniteMetricSpace,
    PointSequence,
    SubsetHandle,
    Violation,
    cauchy_subsequence_at_scale,
    check_metric,
    euclidean_table,
    validate_metric,
)
from .hyperspace import (
    CollectionSpec,
    HyperspaceView,
    ModulusProfile,
    PointMap,
    check_modulus_transfer,
    cluster_members_check,
    enumerate_subsets,
    hyper_atsuji_shadow,
    induced_apply,
    materialize,
    modulus_of_induced_map,
    modulus_of_map,
    point_finite_multiplicity,
    singleton_embed,
    uniform_equivalence_profile,
)
from .families import FamilySpec, SpaceBundle, generate, sequence
from .fixedpoint import (
    MultiMap,
    SearchTrace,
    almost_fixed_point_search,
    convex_demo,
    hyper_fixed_search,
    joint_continuity_gap,
    multimap_modulus,
    residual,
)
from .suites import SUITE_NAMES, emit_report, run_suite

__version__ = "0.1.0"
