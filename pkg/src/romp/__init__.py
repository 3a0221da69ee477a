"""Exact reconstruction of Berger measures for 2-variable weighted shifts.

The package decides whether a shift described by localized Berger measures
on a canonical invariant subspace, together with its two marginal measures,
is subnormal, and when it is, reconstructs the global Berger measure.  All
arithmetic is exact rational; every verdict comes with a per-condition
report.
"""

from . import documents
from .extensions import (
    Condition,
    ConditionReport,
    ExtensionResult,
    backstep_1d,
    backstep_2d,
    build_mu_0l,
    build_mu_k0,
    multistep_axis,
    one_step_generalized,
    two_step,
)
from .lattice import (
    Pattern,
    PatternType,
    StaircasePath,
    classify_type,
    closure_membership,
    foundation,
    join_origin,
    meet_corner,
    staircase,
)
from .measures import (
    INFINITE,
    Atom1,
    Atom2,
    AtomicMeasure1,
    AtomicMeasure2,
    InfiniteReciprocalError,
    MeasureError,
    Rational,
    SignedMeasureError,
    canonicalize,
    density_scale,
    density_scale_1d,
    embed_axis,
    extremal,
    integrate_monomial,
    integrate_power,
    is_infinite,
    is_positive,
    is_probability,
    leq,
    linear_combine,
    marginal_x,
    marginal_y,
    point_mass1,
    point_mass2,
    reciprocal_norm,
    reciprocal_norm_1d,
    reciprocal_scale,
    reciprocal_scale_1d,
    scale,
    split_regions,
    total_mass,
)
from .moments import (
    GammaTable,
    LatticePoint,
    MissingMomentError,
    Restriction,
    WeightDiagram,
    ZeroMomentError,
    check_berger_1d,
    check_commuting,
    gamma_from_measure,
    gamma_from_weights,
    restriction_measure,
    weights_from_gamma,
)
from .oracle import generate_instance, random_measure, verify_solution
from .solver import (
    INSOLUBLE,
    MODES,
    InstanceError,
    RompInstance,
    RompSolution,
    SUBNORMAL,
    check_compatibility,
    merge_pair,
    merge_staircase,
    solve_canonical,
)

__version__ = "0.1.0"
