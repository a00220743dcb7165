"""Computable dynamics of solenoid homeomorphisms.

Exact profinite/solenoid arithmetic, piecewise-linear circle lifts, induced
homeomorphisms of every degree, certified rotation enclosures, fiber-periodic
orbit detection, and hull/semi-conjugacy verification.
"""

from .circlemaps import (
    AnalyticLift,
    PeriodicPL,
    PLLift,
    analytic_new,
    displacement_of,
    divisors,
    identity_lift,
    lift_compose,
    lift_eval,
    lift_inverse,
    lift_iterate_eval,
    map_from_descriptor,
    map_to_descriptor,
    minimal_period,
    pl_new,
    rotation_lift,
)
from .dynamics import (
    AsymptoticToFiber,
    FiberPeriodic,
    Inconclusive,
    RotationEnclosure,
    certify_rational,
    classify_orbit,
    enclosure_sequence,
    fiber_target,
    find_fiber_periodic,
    rational_certificate,
    rho_of_induced,
    rotation_report,
    simplest_rational_in,
    translation_enclosure,
)
from .errors import (
    AnalyticExactUnsupported,
    BreakpointCapExceeded,
    DegreeMismatch,
    DepthExceeded,
    EmptyBreakpoints,
    MixedHulls,
    NoSuchOrbit,
    NotDivisorChain,
    NotHomeomorphism,
    NotIncreasing,
    NotInducedAtLevel,
    NotMonotone,
    NotMultiple,
    SoldynError,
)
from .hull import (
    Hull,
    HullPoint,
    K_map,
    LimitPeriodicCertified,
    Periodic,
    QuotientMap,
    SemiconjugacyReport,
    Unknown,
    check_semiconjugacy,
    g_apply,
    hull_dist,
    hull_func_dist,
    hull_inv,
    hull_mul,
    hull_of,
    hull_point_eval,
    hull_translate,
    isotopy_eval,
    lp_hull_level,
    periodicity_classify,
    quotient_map,
)
from .induced import (
    CircleMapModN,
    InducedHomeo,
    LimitPeriodicHomeo,
    apply,
    apply_iter,
    circle_map,
    compose_induced,
    cover_eval,
    displacement_at,
    embed_degree,
    homeo_from_descriptor,
    identity_homeo,
    induce,
    invert_induced,
    leaf_displacement,
    lp_build,
    lp_from_descriptor,
    lp_truncate,
    translation_homeo,
)
from .profinite import (
    DEFAULT_DEPTH,
    ProfiniteInt,
    embed_int,
    parse_profinite,
    pf_add,
    pf_dist,
    pf_neg,
    pf_sub,
    residue,
)
from .solenoid import (
    CirclePointModN,
    SolenoidPoint,
    canonicalize,
    deck,
    parse_point,
    project,
    sigma,
    sol_add,
    sol_dist,
    sol_neg,
    sol_sub,
    zero_point,
)

__version__ = "0.1.0"
