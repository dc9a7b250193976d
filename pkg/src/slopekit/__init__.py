"""Numerics for parabolic self-maps of the upper half-plane.

Iterate orbits at controlled precision, classify hyperbolic step size,
bracket the limiting slope of the orbit argument, evaluate the defining
half-plane integrals two independent ways, and build or certify pole
ladders whose orbits oscillate instead of converging to a single angle.
"""

from .constructions import (
    ConditionReport,
    ConditionStatus,
    ConstructionSpec,
    FamilyMeta,
    RegionCheck,
    RegionReport,
    SearchResult,
    build_construction,
    check_region_lemmas,
    construction_map,
    factorial_ladder,
    search_constants,
    validate_conditions,
)
from .dynamics import (
    OrbitTrace,
    PairTrace,
    StepClassification,
    classify_step,
    classify_trace,
    iterate_orbit,
    pommerenke_b,
    two_orbit_rho,
)
from .errors import (
    HypothesisViolation,
    InputError,
    LeftHalfPlane,
    NumericError,
    PrecisionExhaustion,
    QuadratureIndeterminate,
    SlopekitError,
)
from .halfplane import (
    UHPoint,
    cayley_disk_to_halfplane,
    cayley_halfplane_to_disk,
    principal_arg,
    pseudo_hyperbolic_distance,
)
from .maps import (
    ParabolicMap,
    PredictedSlope,
    TranslationLimit,
    alpha_left_map,
    alpha_right_map,
    atom_map,
    eval_map,
    log_map,
    predict_slope,
    translation_limit_estimate,
    translation_map,
)
from .measures import (
    Atom,
    DensityFamily,
    FiniteMeasure,
    MomentReport,
    alpha_left_measure,
    alpha_right_measure,
    atom_measure,
    herglotz_integral,
    log_right_measure,
    moments,
    reduced_p,
)
from .precision import DEFAULT_BITS, current_bits, setup, use_bits
from .slope import (
    SeedComparison,
    SingletonReport,
    SlopeReport,
    check_initial_point_independence,
    check_positive_step_singleton,
    slope_report,
)

__version__ = "0.1.0"
