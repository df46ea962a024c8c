"""Finite-scale laws shared by the property tests and the acceptance suite.

Each checker returns a list of violations (empty when the law holds) so the
acceptance report can print counts instead of stopping at the first failure.
"""

from collections import deque
from fractions import Fraction as F

from shadowable.certify import clopen_shadow_certificate, periodic_tracker
from shadowable.dynamics import chain_classes, continuity_modulus, nonwandering_return, pseudo_orbit_graph
from shadowable.engine import (
    is_shadowable,
    pointwise_modulus,
    potp_modulus,
    shadowable_points,
    shadowable_through_set,
)
from shadowable.metric import ball
from shadowable.oracle import periodic_shadowers


def grid(sys):
    return sys.space.values


def monotonicity(sys):
    bad = []
    vals = grid(sys)
    for i, e in enumerate(vals):
        for j, d in enumerate(vals):
            here = shadowable_points(sys, e, d)
            if i + 1 < len(vals) and not here <= shadowable_points(sys, vals[i + 1], d):
                bad.append(("eps", e, d))
            if j + 1 < len(vals) and not shadowable_points(sys, e, vals[j + 1]) <= here:
                bad.append(("delta", e, d))
    return bad


def uniformity_collapse(sys):
    bad = []
    for e in grid(sys):
        m = min(pointwise_modulus(sys, x, e) for x in range(sys.n))
        if potp_modulus(sys, e) != m:
            bad.append((e, potp_modulus(sys, e), m))
    return bad


def isometric_invariance(sys):
    assert sys.is_isometry
    bad = []
    for e in grid(sys):
        for d in grid(sys):
            sh = shadowable_points(sys, e, d)
            if frozenset(sys.fwd[x] for x in sh) != sh:
                bad.append((e, d))
    return bad


def moduli_invariance(sys):
    """x in Sh(e1, d1), cm_fwd(e1) <= e, cm_inv(d) <= d1  =>  f(x) in Sh(e, d).

    ``e`` is taken as small as the hypothesis allows; larger ``e`` follow by
    monotonicity, which is checked separately.
    """
    bad = []
    vals = grid(sys)
    for e1 in vals:
        e = continuity_modulus(sys, "fwd", e1)
        for d in vals:
            cm = continuity_modulus(sys, "inv", d)
            target = shadowable_points(sys, e, d)
            for d1 in vals:
                if cm > d1:
                    continue
                for x in shadowable_points(sys, e1, d1):
                    if sys.fwd[x] not in target:
                        bad.append((x, e1, d1, e, d))
    return bad


def through_ball(sys, standing=False):
    """Through-set shadowing at (eps, delta) spreads to B[K, d2] at (2 eps, d2).

    Hypotheses: 2 d2 <= delta and cm_fwd(d2) <= delta / 2. With ``standing``
    the extra assumption ``d2 <= eps`` is added; the default checks the law
    without it, which is the stronger statement. Singletons K suffice since through-set shadowing is a subset test.
    """
    bad = []
    vals = grid(sys)
    for e in vals:
        for d in vals:
            sh = shadowable_points(sys, e, d)
            for d2 in vals:
                if 2 * d2 > d or continuity_modulus(sys, "fwd", d2) > d / 2:
                    continue
                if standing and d2 > e:
                    continue
                for x in sh:
                    K = ball(sys.space, x, d2)
                    if not shadowable_through_set(sys, K, 2 * e, d2):
                        bad.append((x, e, d, d2))
    return bad


def shortest_cycle(sys, x, delta):
    """A shortest closed walk x -> ... -> x in the delta-pseudo-orbit graph, or None."""
    g = pseudo_orbit_graph(sys, delta)
    parent = {}
    queue = deque([x])
    seen = {x}
    while queue:
        u = queue.popleft()
        for v in g.succ[u]:
            if v == x:
                path = [u]
                while path[-1] != x:
                    path.append(parent[path[-1]])
                return path[::-1]
            if v not in seen:
                seen.add(v)
                parent[v] = u
                queue.append(v)
    return None


def nonwandering_implication(sys):
    """Shadowable and chain recurrent at delta  =>  eps-nonwandering, with witness."""
    bad = []
    checked = 0
    for d in grid(sys):
        _, recurrent = chain_classes(sys, d)
        for e in grid(sys):
            for x in shadowable_points(sys, e, d):
                if not recurrent[x]:
                    continue
                block = shortest_cycle(sys, x, d)
                k = len(block)
                ys = periodic_shadowers(sys, block, e)
                B = ball(sys.space, x, e)
                witness = [y for y in ys if y in B and sys.iterate(y, k) in B]
                checked += 1
                if not witness or nonwandering_return(sys, x, e) > k:
                    bad.append((x, e, d, block))
    return bad if checked else [("vacuous", sys.name)]


def tracker_implication(sys, standing=False):
    """B[z, d] inside Sh(e/2, d) and x, f^k(x) in B[z, d/2]  =>  a k-tracker exists.

    The returned tracker's period is at most the least such k, and ``y`` with
    f^{pk}(y) in B[z, e] exists at that k. ``standing`` restricts to d <= e.
    """
    bad = []
    vals = grid(sys)
    for e in vals:
        for d in vals:
            if standing and d > e:
                continue
            for z in range(sys.n):
                if not shadowable_through_set(sys, ball(sys.space, z, d), e / 2, d):
                    continue
                half = ball(sys.space, z, d / 2)
                ks = [k for k in range(1, sys.order + 1) if any(sys.iterate(x, k) in half for x in half)]
                if not ks:
                    continue
                k0 = ks[0]
                B = ball(sys.space, z, e)
                exists = any(all(sys.iterate(y, p * k0) in B for p in range(sys.periods[y])) for y in B)
                got = periodic_tracker(sys, z, e, d)
                if got is None or got[0] > k0 or not exists:
                    bad.append((z, e, d, k0, got))
    return bad


def certificate_soundness(sys):
    bad = []
    for p in range(sys.n):
        for e in grid(sys):
            cert = clopen_shadow_certificate(sys, p, e)
            if cert is None:
                continue
            if not (cert.trace["holds"] and is_shadowable(sys, p, e, cert.delta).shadowable):
                bad.append((p, e))
    return bad


def power_correspondence(sys, k, pairs, power_grid):
    """For each scale pair of f, the grid pairs where f^k has the same shadowable set."""
    from shadowable.dynamics import power_system

    g = power_system(sys, k)
    out = {}
    for e, d in pairs:
        target = shadowable_points(sys, e, d)
        out[(F(e), F(d))] = tuple(
            (e2, d2) for e2, d2 in power_grid if shadowable_points(g, e2, d2) == target
        )
    return out
