"""Constructive shadowing certificates: periodic trackers and clopen certificates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .dynamics import DynSystem, equicontinuity_modulus, pair_orbit_extremes
from .metric import ball, component_of, diameter, set_distance, as_fraction


def periodic_tracker(sys: DynSystem, z: int, eps, delta=None):
    """First ``(k, y)`` with the whole f^k-orbit of ``y`` inside ``B[z, eps]``.

    ``k`` runs upward from 1; for each ``k`` the candidates are ``z`` itself and
    then the rest of the ball in index order. On a finite permutation
    ``(period(z), z)`` always qualifies, so the search ends by the period of
    ``z``; ``delta`` does not influence the search.
    """
    inside = ball(sys.space, z, eps)
    candidates = [z] + sorted(inside - {z})
    for k in range(1, sys.periods[z] + 1):
        for y in candidates:
            steps = sys.periods[y] // math.gcd(sys.periods[y], k)
            w, ok = y, True
            for _ in range(steps):
                if w not in inside:
                    ok = False
                    break
                w = sys.iterate(w, k)
            if ok:
                return k, y
    return None


@dataclass(frozen=True)
class ClopenCertificate:
    point: int
    eps: Fraction
    delta: Fraction
    U: frozenset
    trace: dict


def clopen_shadow_certificate(sys: DynSystem, p: int, eps) -> Optional[ClopenCertificate]:
    """Finite-scale run of the clopen argument for equicontinuous shadowing.

    Steps: ``eps1`` is the equicontinuity modulus at ``eps``; ``U`` is the
    component of ``p`` at the largest gap whose component still has diameter
    ``<= eps1``; ``delta1`` is the largest realized distance strictly below the
    separation of ``U`` from the rest; ``delta`` is the equicontinuity modulus
    at ``delta1``. Any delta-pseudo-orbit through ``p`` then keeps
    ``f^-n(xi_n)`` inside ``U`` and is eps-shadowed by the orbit of ``p``.
    Returns None when the construction only yields ``delta = 0``.
    """
    space = sys.space
    eps = as_fraction(eps)
    eps1 = equicontinuity_modulus(sys, eps)

    gap, U = space.values[0], frozenset([p])
    for g in space.values[1:]:
        comp = component_of(space, p, g)
        if diameter(space, comp) > eps1:
            break
        gap, U = g, comp

    rest = frozenset(range(sys.n)) - U
    if rest:
        sep = set_distance(space, U, rest)
        delta1 = max(v for v in space.values if v < sep)
    else:
        sep = None
        delta1 = space.diameter
    delta = equicontinuity_modulus(sys, delta1)
    if delta == 0 and rest:
        return None

    trace = certificate_trace(sys, p, eps, delta, U)
    trace.update({"eps_prime": eps1, "gap": gap, "separation": sep, "delta_prime": delta1})
    return ClopenCertificate(p, eps, delta, U, trace)


def certificate_trace(sys: DynSystem, p: int, eps, delta, U) -> dict:
    """Check the two facts that make a clopen certificate sound.

    ``closure_margin``: no orbit strand from ``U`` ever comes within ``delta``
    of a strand from outside ``U``, so pulling a delta-pseudo-orbit back along
    f can never leave ``U``. ``tracking_bound``: every strand from ``U`` stays
    within ``eps`` of the orbit of ``p``.
    """
    eps, delta = as_fraction(eps), as_fraction(delta)
    rest = [b for b in range(sys.n) if b not in U]
    margin = None
    for a in sorted(U):
        for b in rest:
            m = pair_orbit_extremes(sys, a, b).min_dist
            margin = m if margin is None else min(margin, m)
    bound = max(pair_orbit_extremes(sys, p, a).max_dist for a in U)
    closed = margin is None or margin > delta
    return {
        "closure_margin": margin,
        "tracking_bound": bound,
        "pullback_stays_in_U": closed,
        "shadowed_by_orbit_of_p": bound <= eps,
        "holds": closed and bound <= eps,
    }
