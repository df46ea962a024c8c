"""Permutations of finite metric spaces and their orbit-level invariants."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import NotAPermutation, SingletonSpace, ZeroExponent
from .metric import FiniteMetricSpace, _partition, as_fraction


@dataclass(frozen=True)
class DynSystem:
    space: FiniteMetricSpace
    fwd: tuple
    inv: tuple
    name: str = field(default="system", compare=False)

    @property
    def n(self) -> int:
        return self.space.n

    @cached_property
    def cycles(self) -> tuple:
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self.fwd[x]
            out.append(tuple(cyc))
        return tuple(out)

    @cached_property
    def periods(self) -> tuple:
        per = [0] * self.n
        for cyc in self.cycles:
            for x in cyc:
                per[x] = len(cyc)
        return tuple(per)

    @cached_property
    def order(self) -> int:
        """Order of the permutation: the least m >= 1 with f^m = id."""
        return reduce(math.lcm, (len(c) for c in self.cycles), 1)

    def iterate(self, x: int, k: int) -> int:
        k %= self.periods[x]
        perm = self.fwd
        for _ in range(k):
            x = perm[x]
        return x

    def power_perm(self, k: int) -> np.ndarray:
        """The permutation f^k as an index array (negative k uses the inverse)."""
        out = np.empty(self.n, dtype=np.int64)
        for cyc in self.cycles:
            p = len(cyc)
            s = k % p
            for i, x in enumerate(cyc):
                out[x] = cyc[(i + s) % p]
        return out

    @cached_property
    def _pair_orbit_ranks(self):
        """(min, max) rank of d(f^t x, f^t y) over all t, for every pair at once."""
        lo = self.space.rank.astype(np.int64)
        hi = lo.copy()
        step = 1
        while step < self.order:
            p = self.power_perm(step)
            new_lo = np.minimum(lo, lo[np.ix_(p, p)])
            new_hi = np.maximum(hi, hi[np.ix_(p, p)])
            if np.array_equal(new_lo, lo) and np.array_equal(new_hi, hi):
                break
            lo, hi = new_lo, new_hi
            step *= 2
        return lo, hi

    @cached_property
    def is_isometry(self) -> bool:
        f = np.asarray(self.fwd)
        r = self.space.rank
        return bool(np.array_equal(r[np.ix_(f, f)], r))


def make_system(space: FiniteMetricSpace, fwd, name: str = "system") -> DynSystem:
    fwd = tuple(int(v) for v in fwd)
    n = space.n
    if len(fwd) != n or sorted(fwd) != list(range(n)):
        dup = next((v for v in fwd if fwd.count(v) > 1), None)
        raise NotAPermutation(
            f"map is not a permutation of 0..{n - 1}",
            (dup,) if dup is not None else (),
        )
    inv = [0] * n
    for i, v in enumerate(fwd):
        inv[v] = i
    return DynSystem(space, fwd, tuple(inv), name)


@dataclass(frozen=True)
class PairOrbitSummary:
    min_dist: Fraction
    max_dist: Fraction
    period: int


@dataclass(frozen=True)
class PseudoOrbitGraph:
    delta: Fraction
    succ: tuple  # succ[u] = sorted tuple of v with d(f(u), v) <= delta

    @property
    def n(self):
        return len(self.succ)

    def edges(self):
        return {(u, v) for u, vs in enumerate(self.succ) for v in vs}

    def pred(self):
        out = [[] for _ in self.succ]
        for u, vs in enumerate(self.succ):
            for v in vs:
                out[v].append(u)
        return tuple(tuple(p) for p in out)


def orbit(sys: DynSystem, x: int):
    """The cycle of ``x`` starting at ``x``, and its length."""
    out = [x]
    y = sys.fwd[x]
    while y != x:
        out.append(y)
        y = sys.fwd[y]
    return out, len(out)


def omega_limit(sys: DynSystem, x: int) -> frozenset:
    # finite permutations are purely periodic, so the omega-limit set is the orbit
    return frozenset(orbit(sys, x)[0])


def pair_orbit_extremes(sys: DynSystem, x: int, y: int) -> PairOrbitSummary:
    period = math.lcm(sys.periods[x], sys.periods[y])
    r = sys.space.rank
    lo = hi = int(r[x, y])
    a, b = x, y
    for _ in range(period - 1):
        a, b = sys.fwd[a], sys.fwd[b]
        k = int(r[a, b])
        lo = min(lo, k)
        hi = max(hi, k)
    vals = sys.space.values
    return PairOrbitSummary(vals[lo], vals[hi], period)


def distality_margin(sys: DynSystem):
    """Smallest distance ever reached by two distinct orbit strands, with a witness pair."""
    if sys.n < 2:
        raise SingletonSpace("distality margin needs at least two points")
    lo, _ = sys._pair_orbit_ranks
    masked = lo + np.eye(sys.n, dtype=np.int64) * (len(sys.space.values) + 1)
    i, j = np.unravel_index(int(np.argmin(masked)), masked.shape)
    return sys.space.values[int(masked[i, j])], (int(i), int(j))


def equicontinuity_modulus(sys: DynSystem, alpha) -> Fraction:
    """Largest realized distance beta such that d(x, y) <= beta keeps every iterate pair within alpha.

    Returns ``Fraction(0)`` when only coincident pairs qualify.
    """
    space = sys.space
    _, hi = sys._pair_orbit_ranks
    bad = hi > space.level(alpha)
    if not bad.any():
        return space.diameter
    first_bad = int(space.rank[bad].min())
    return space.values[first_bad - 1]


def continuity_modulus(sys: DynSystem, direction: str, t) -> Fraction:
    """One-step modulus: max d(g(a), g(b)) over d(a, b) <= t, with g = f or f^-1."""
    if direction not in ("fwd", "inv"):
        raise ValueError("direction must be 'fwd' or 'inv'")
    space = sys.space
    g = np.asarray(sys.fwd if direction == "fwd" else sys.inv)
    mask = space.within(t)
    k = int(space.rank[np.ix_(g, g)][mask].max())
    return space.values[k]


def nonwandering_return(sys: DynSystem, x: int, eps) -> int:
    """Least k >= 1 with f^k(B[x, eps]) meeting B[x, eps]."""
    inside = sys.space.rank[x] <= sys.space.level(eps)
    pts = np.flatnonzero(inside)
    cur = pts.copy()
    fwd = np.asarray(sys.fwd)
    for k in range(1, sys.periods[x] + 1):
        cur = fwd[cur]
        if inside[cur].any():
            return k
    raise AssertionError("unreachable: x returns to itself after its period")


def pseudo_orbit_graph(sys: DynSystem, delta) -> PseudoOrbitGraph:
    space = sys.space
    near = space.within(delta)
    succ = tuple(tuple(int(v) for v in np.flatnonzero(near[sys.fwd[u]])) for u in range(sys.n))
    return PseudoOrbitGraph(as_fraction(delta), succ)


def chain_classes(sys: DynSystem, delta):
    """Strongly connected components of G_delta and a per-point chain-recurrence flag."""
    g = pseudo_orbit_graph(sys, delta)
    adj = np.zeros((sys.n, sys.n), dtype=bool)
    for u, vs in enumerate(g.succ):
        adj[u, list(vs)] = True
    _, labels = connected_components(csr_matrix(adj), directed=True, connection="strong")
    classes = _partition(labels)
    recurrent = [False] * sys.n
    for c in classes:
        flag = len(c) > 1 or any(u in g.succ[u] for u in c)
        for u in c:
            recurrent[u] = flag
    return classes, tuple(recurrent)


def is_minimal(sys: DynSystem) -> bool:
    return len(sys.cycles) == 1


def power_system(sys: DynSystem, k: int) -> DynSystem:
    if k == 0:
        raise ZeroExponent("f^0 is not a meaningful power here")
    perm = sys.power_perm(k)
    return make_system(sys.space, perm, f"{sys.name}^{k}")


def delta_candidates(sys: DynSystem) -> tuple:
    """Distinct values of d(f(u), v); for a bijection these are exactly the realized distances."""
    return sys.space.values
