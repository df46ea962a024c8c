"""Exact shadowable-point analysis for permutations of finite metric spaces."""

from .dynamics import (
    DynSystem,
    PairOrbitSummary,
    PseudoOrbitGraph,
    chain_classes,
    continuity_modulus,
    distality_margin,
    equicontinuity_modulus,
    is_minimal,
    make_system,
    nonwandering_return,
    omega_limit,
    orbit,
    pair_orbit_extremes,
    power_system,
    pseudo_orbit_graph,
)
from .engine import (
    ShadowVerdict,
    SubsetAutomaton,
    build_automaton,
    is_shadowable,
    modulus_admits,
    pointwise_modulus,
    potp_modulus,
    shadowable_points,
    shadowable_through_set,
)
from .certify import ClopenCertificate, clopen_shadow_certificate, periodic_tracker
from .metric import (
    FiniteMetricSpace,
    ball,
    candidate_thresholds,
    components,
    deg_points,
    diameter,
    proximity_graph,
    set_distance,
    validate_metric,
)
from .oracle import lift_exists, oracle_shadowable

__version__ = "0.1.0"
