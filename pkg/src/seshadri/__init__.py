"""Certified lower bounds for multipoint Seshadri constants, in exact arithmetic."""

from .apps import (
    ThresholdReport,
    ampleness_lower_bound,
    effectivity_lower_bound,
    freeness_va_bounds,
    regularity_bounds,
    threshold_report,
)
from .bounds import (
    BoundWitness,
    PellSolution,
    SeshadriBound,
    SpecialBound,
    coarse_lower_bounds,
    compare_references,
    epsilon_basic,
    epsilon_oracle,
    epsilon_refined,
    pell_defect,
    pell_fundamental,
    pell_plus_one,
    plane_lower_bounds,
    scaled_pell_bound,
    special_square_bounds,
)
from .errors import PreconditionError
from .lptest import (
    EffectivityVerdict,
    TargetSystem,
    certify_empty,
    lp_optimum_simplex,
    lp_optimum_vertex,
    optimal_test_divisor,
)
from .nefcert import (
    BlowupDivisorClass,
    CurveData,
    NefCertificate,
    build_adhoc,
    build_extended,
    build_nonuniform,
    build_refined,
    build_uniform,
    certificate_from_dict,
    check_nef_conditions,
    pairing,
    suggest_degree,
)
from .stats import (
    ScanReport,
    dirichlet_witness,
    doublestar_failure_count,
    half_range_check,
    interval_I_contains,
    interval_J_contains,
    scan_rows,
    star_fraction,
    star_holds,
)

__version__ = "0.1.0"
