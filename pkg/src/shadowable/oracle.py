"""Window-level semantics, kept independent of the automaton.

Everything here works on plain ``frozenset`` objects and compares Fractions
directly, so it shares no code path with the bitset kernels.
"""

from __future__ import annotations

import math
from itertools import product

from .dynamics import DynSystem
from .errors import ExplosionGuard, NotAWalk
from .metric import as_fraction

DEFAULT_BUDGET = 2_000_000


def _balls(sys: DynSystem, r):
    r = as_fraction(r)
    dist = sys.space.dist
    return [frozenset(y for y in range(sys.n) if dist[v][y] <= r) for v in range(sys.n)]


def _steps(sys: DynSystem, delta):
    """succ[u] = {v : d(f(u), v) <= delta}, pred[v] = {u : d(f(u), v) <= delta}."""
    delta = as_fraction(delta)
    dist = sys.space.dist
    succ = [[v for v in range(sys.n) if dist[sys.fwd[u]][v] <= delta] for u in range(sys.n)]
    pred = [[u for u in range(sys.n) if dist[sys.fwd[u]][v] <= delta] for v in range(sys.n)]
    return succ, pred


def check_walk(sys: DynSystem, window, delta):
    delta = as_fraction(delta)
    for i in range(len(window) - 1):
        a, b = window[i], window[i + 1]
        if sys.space.dist[sys.fwd[a]][b] > delta:
            raise NotAWalk(f"step {i}: d(f({a}), {b}) = {sys.space.dist[sys.fwd[a]][b]} > {delta}")


def lift_exists(sys: DynSystem, window, eps, delta=None):
    """A point whose orbit stays within eps of ``window`` along it, or None.

    When ``delta`` is given the window is first checked to be a walk of G_delta.
    """
    window = [int(w) for w in window]
    if not window:
        raise NotAWalk("empty window")
    if delta is not None:
        check_walk(sys, window, delta)
    balls = _balls(sys, eps)
    S = balls[window[0]]
    for w in window[1:]:
        S = frozenset(sys.fwd[y] for y in S) & balls[w]
        if not S:
            return None
    z = min(S)
    for _ in range(len(window) - 1):
        z = sys.inv[z]
    return z


def tracks(sys: DynSystem, y: int, window, eps) -> bool:
    eps = as_fraction(eps)
    for w in window:
        if sys.space.dist[y][w] > eps:
            return False
        y = sys.fwd[y]
    return True


def periodic_shadowers(sys: DynSystem, block, eps) -> frozenset:
    """Points eps-shadowing the bi-infinite pseudo-orbit that repeats ``block`` forever.

    Both the orbit of y and the pseudo-orbit are periodic, so checking one common
    period is exact.
    """
    eps = as_fraction(eps)
    k = len(block)
    dist = sys.space.dist
    out = []
    for y in range(sys.n):
        span = math.lcm(sys.periods[y], k)
        z, ok = y, True
        for t in range(span):
            if dist[z][block[t % k]] > eps:
                ok = False
                break
            z = sys.fwd[z]
        if ok:
            out.append(y)
    return frozenset(out)


def _perm_power(sys: DynSystem, j: int, cache: dict):
    j %= sys.order
    if j not in cache:
        p = list(range(sys.n))
        for _ in range(j):
            p = [sys.fwd[v] for v in p]
        cache[j] = p
    return cache[j]


def _to_mask(s):
    m = 0
    for v in s:
        m |= 1 << v
    return m


def oracle_shadowable(sys: DynSystem, x: int, eps, delta, max_window: int,
                      budget: int = DEFAULT_BUDGET, dedupe: bool = True) -> bool:
    """Check every window ``w_{-m..m}`` of G_delta with ``w_0 = x`` for an eps-lift.

    Returns False iff some window of half-width ``max_window`` has no lift. With
    ``dedupe=False`` every walk is enumerated literally. With ``dedupe=True``
    the past and future halves are explored separately and walk prefixes are
    merged when they leave the same constraint behind (same endpoint, same
    surviving set, same time offset modulo the order of f) or when one leaves a
    strictly weaker constraint than another; this does not change the answer,
    only the cost. ``budget`` bounds the number of walks (literal
    mode) or merged prefixes (dedupe mode).
    """
    if max_window < 1:
        raise ValueError("max_window must be >= 1")
    if dedupe:
        return _oracle_halves(sys, x, eps, delta, max_window, budget)
    return _oracle_literal(sys, x, eps, delta, max_window, budget)


def _oracle_literal(sys, x, eps, delta, m, budget):
    succ, pred = _steps(sys, delta)

    def walks(start, nbrs):
        out = [[start]]
        for _ in range(m):
            out = [w + [v] for w in out for v in nbrs[w[-1]]]
            if len(out) > budget:
                raise ExplosionGuard(f"more than {budget} half-walks")
        return out

    past = walks(x, pred)
    future = walks(x, succ)
    if len(past) * len(future) > budget:
        raise ExplosionGuard(f"{len(past) * len(future)} windows exceed the budget of {budget}")
    for p, f in product(past, future):
        window = p[::-1] + f[1:]
        if lift_exists(sys, window, eps) is None:
            return False
    return True


def _oracle_halves(sys, x, eps, delta, m, budget):
    balls = [_to_mask(b) for b in _balls(sys, eps)]
    succ, pred = _steps(sys, delta)
    powers = {}
    order = sys.order

    def image(mask, perm):
        out = 0
        while mask:
            low = mask & -mask
            out |= 1 << perm[low.bit_length() - 1]
            mask ^= low
        return out

    def explore(nbrs, step_map, sign):
        # a prefix is (endpoint, surviving set at the endpoint's time, |time| mod order).
        # Prefixes with the same endpoint and offset are ordered by their sets:
        # a larger set only ever leads to larger sets, so it is dropped.
        start = (x, balls[x], 0)
        kept = {(x, 0): [balls[x]]}
        seen = {start}
        frontier = [start]
        found = {balls[x]}
        count = 1
        for _ in range(m):
            nxt = []
            for w, T, j in frontier:
                moved = image(T, step_map)
                j2 = (j + 1) % order
                for v in nbrs[w]:
                    T2 = moved & balls[v]
                    if not T2:
                        return None
                    key = (v, T2, j2)
                    if key in seen:
                        continue
                    seen.add(key)
                    group = kept.setdefault((v, j2), [])
                    if any(o & T2 == o for o in group):
                        continue
                    group.append(T2)
                    count += 1
                    if count > budget:
                        raise ExplosionGuard(f"more than {budget} distinct half-walk states")
                    nxt.append(key)
                    found.add(image(T2, _perm_power(sys, sign * (j + 1), powers)))
            if not nxt:
                break
            frontier = nxt
        return found

    # past: step backwards with f^-1; a set at time -j maps to time 0 by f^j
    past = explore(pred, sys.inv, 1)
    if past is None:
        return False
    # future: step forwards with f; a set at time j maps to time 0 by f^-j
    future = explore(succ, sys.fwd, -1)
    if future is None:
        return False
    past = _minimal(past)
    future = _minimal(future)
    return all(p & f for p in past for f in future)


def _minimal(masks):
    """Inclusion-minimal masks; a disjoint pair exists iff one exists among minimal ones."""
    out = []
    for m in sorted(masks, key=lambda v: bin(v).count("1")):
        if not any(o & m == o for o in out):
            out.append(m)
    return out
