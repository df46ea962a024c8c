"""Exact (eps, delta)-shadowability through a subset automaton.

A point ``x`` fails to be (eps, delta)-shadowable iff some finite walk of the
pseudo-orbit graph ``G_delta`` passing through ``x`` has no eps-tracking orbit.
Reading such a walk left to right while keeping the set of still-viable current
positions of a tracking orbit gives a deterministic automaton on pairs
``(u, S)``; ``x`` is bad iff some reachable ``(x, S)`` can still reach an empty
candidate set. One automaton per (eps, delta) answers every point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Optional

import numpy as np

from . import kernel
from .dynamics import DynSystem
from .errors import EmptyArgument, StateCapExceeded
from .metric import as_fraction

DEFAULT_STATE_CAP = 10**6


@dataclass(frozen=True, eq=False)
class SubsetAutomaton:
    eps: Fraction
    delta: Fraction
    n: int
    state_u: np.ndarray
    state_set: object  # uint64 array (compiled kernel) or list of ints
    parent: np.ndarray
    depth: np.ndarray
    succ_ptr: np.ndarray
    succ: np.ndarray
    dist: np.ndarray  # steps to an empty candidate set, -1 if unreachable
    next: np.ndarray
    backend: str

    def __len__(self):
        return len(self.state_u)

    def mask(self, i: int) -> int:
        return int(self.state_set[i])

    def state(self, i: int):
        m = self.mask(i)
        return int(self.state_u[i]), frozenset(j for j in range(self.n) if m >> j & 1)

    def successors(self, i: int):
        return [int(j) for j in self.succ[self.succ_ptr[i]:self.succ_ptr[i + 1]]]

    @cached_property
    def doomed(self) -> np.ndarray:
        return self.dist >= 0

    @cached_property
    def bad_points(self) -> frozenset:
        return frozenset(int(u) for u in np.unique(self.state_u[self.doomed]))

    def has_empty_state(self) -> bool:
        return bool((self.dist == 0).any())

    def path_from_initial(self, i: int) -> list:
        out = [i]
        while self.parent[out[-1]] >= 0:
            out.append(int(self.parent[out[-1]]))
        return out[::-1]

    def path_to_empty(self, i: int) -> list:
        if self.dist[i] < 0:
            raise ValueError(f"state {i} cannot reach an empty candidate set")
        out = [i]
        while self.dist[out[-1]] > 0:
            out.append(int(self.next[out[-1]]))
        return out


def _adjacency(sys: DynSystem, delta):
    near = sys.space.within(delta)
    rows = near[np.asarray(sys.fwd)]
    idx = [np.flatnonzero(r) for r in rows]
    ptr = np.zeros(sys.n + 1, dtype=np.int64)
    ptr[1:] = np.cumsum([len(r) for r in idx])
    return ptr, np.concatenate(idx).astype(np.int64)


@lru_cache(maxsize=128)
def _build(sys: DynSystem, eps_level: int, delta_level: int, cap: int, backend: str):
    vals = sys.space.values
    eps, delta = vals[eps_level], vals[delta_level]
    balls = sys.space.ball_masks(eps)
    ptr, idx = _adjacency(sys, delta)
    try:
        arrays = kernel.closure(sys.n, balls, ptr, idx, list(sys.fwd), cap, backend=backend)
    except StateCapExceeded as exc:
        raise StateCapExceeded(exc.cap, exc.reached, eps, delta) from None
    used = backend if sys.n <= 64 else "python"
    return SubsetAutomaton(eps, delta, sys.n, backend=used, **arrays)


def build_automaton(sys: DynSystem, eps, delta, cap: int = DEFAULT_STATE_CAP, backend: Optional[str] = None):
    """Reachable part of the subset automaton at (eps, delta), memoized per scale pair.

    Thresholds are snapped to the largest realized distance below them, so every
    query between two consecutive thresholds shares one automaton.
    """
    space = sys.space
    e, d = space.level(eps), space.level(delta)
    if e < 0 or d < 0:
        raise ValueError("eps and delta must be non-negative")
    return _build(sys, e, d, int(cap), backend or kernel.BACKEND)


def shadowable_points(sys: DynSystem, eps, delta, cap: int = DEFAULT_STATE_CAP, backend=None) -> frozenset:
    everything = frozenset(range(sys.n))
    if sys.space.level(delta) == 0:
        # G_delta is the functional graph: pseudo-orbits are orbits
        return everything
    aut = build_automaton(sys, eps, delta, cap, backend)
    return everything - aut.bad_points


@dataclass(frozen=True)
class ShadowVerdict:
    point: int
    shadowable: bool
    witness: Optional[tuple] = None  # bad window through the point
    position: Optional[int] = None  # index of the point inside the witness


def is_shadowable(sys: DynSystem, x: int, eps, delta, cap: int = DEFAULT_STATE_CAP, backend=None) -> ShadowVerdict:
    if not 0 <= x < sys.n:
        raise IndexError(x)
    if sys.space.level(delta) == 0:
        return ShadowVerdict(x, True)
    aut = build_automaton(sys, eps, delta, cap, backend)
    if x not in aut.bad_points:
        return ShadowVerdict(x, True)
    here = np.flatnonzero((aut.state_u == x) & aut.doomed)
    best = min(here, key=lambda s: (int(aut.depth[s]) + int(aut.dist[s]), int(s)))
    head = aut.path_from_initial(int(best))
    tail = aut.path_to_empty(int(best))
    walk = tuple(int(aut.state_u[s]) for s in head + tail[1:])
    return ShadowVerdict(x, False, walk, len(head) - 1)


def pointwise_modulus(sys: DynSystem, x: int, eps, cap: int = DEFAULT_STATE_CAP) -> Fraction:
    """Largest realized delta at which ``x`` is (eps, delta)-shadowable.

    Shadowability only gets harder as delta grows, so this is a binary search
    over the realized distances. ``Fraction(0)`` means every delta strictly
    below the smallest positive distance works and nothing larger does.
    """
    vals = sys.space.values
    lo, hi = 0, len(vals) - 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if x in shadowable_points(sys, eps, vals[mid], cap):
            lo = mid
        else:
            hi = mid - 1
    return vals[lo]


def potp_modulus(sys: DynSystem, eps, cap: int = DEFAULT_STATE_CAP) -> Fraction:
    """Largest realized delta at which every point is (eps, delta)-shadowable."""
    vals = sys.space.values
    everything = frozenset(range(sys.n))
    best = vals[0]
    for d in vals[1:]:
        if shadowable_points(sys, eps, d, cap) != everything:
            break
        best = d
    return best


def modulus_admits(sys: DynSystem, modulus, delta) -> bool:
    """Whether ``delta`` lies in the range a returned modulus stands for.

    A modulus ``m`` certifies every delta whose pseudo-orbit graph equals the
    one at ``m``, that is every delta below the next realized distance.
    """
    return sys.space.level(delta) <= sys.space.level(modulus)


def shadowable_through_set(sys: DynSystem, K, eps, delta, cap: int = DEFAULT_STATE_CAP) -> bool:
    K = frozenset(K)
    if not K:
        raise EmptyArgument("through-set shadowing needs a non-empty set")
    return K <= shadowable_points(sys, eps, delta, cap)


def clear_cache():
    _build.cache_clear()


def snap(sys: DynSystem, value) -> Fraction:
    return sys.space.snap(as_fraction(value))
