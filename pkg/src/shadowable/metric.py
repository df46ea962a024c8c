"""Exact finite metric spaces.

Distances are stored as :class:`fractions.Fraction`. Every threshold query
(closed balls, proximity graphs, moduli) is answered through an integer rank
matrix: ``rank[i, j]`` is the position of ``dist[i][j]`` in the sorted list of
distinct distances, so ``d(i, j) <= r`` iff ``rank[i, j] <= level(r)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from bisect import bisect_right
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import (
    EmptyArgument,
    NegativeOrZeroOffDiagonal,
    NonFinite,
    NonSymmetric,
    NonZeroDiagonal,
    NotSquare,
    TriangleViolation,
)

PointSet = frozenset


def as_fraction(value) -> Fraction:
    """Convert ints, Fractions, ``"p/q"`` strings or floats to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            raise NonFinite(f"non-finite value {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


@dataclass(frozen=True)
class FiniteMetricSpace:
    labels: tuple
    dist: tuple  # tuple of tuples of Fraction

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    def d(self, i: int, j: int) -> Fraction:
        return self.dist[i][j]

    @cached_property
    def values(self) -> tuple:
        """Sorted distinct distances, always starting with 0."""
        return tuple(sorted({v for row in self.dist for v in row}))

    @cached_property
    def rank(self) -> np.ndarray:
        lookup = {v: k for k, v in enumerate(self.values)}
        out = np.array([[lookup[v] for v in row] for row in self.dist], dtype=np.int32)
        out.setflags(write=False)
        return out

    def level(self, r) -> int:
        """Index of the largest realized distance ``<= r`` (-1 when ``r < 0``)."""
        return bisect_right(self.values, as_fraction(r)) - 1

    def snap(self, r) -> Fraction:
        """Largest realized distance ``<= r``; thresholds in between behave identically."""
        k = self.level(r)
        if k < 0:
            raise ValueError(f"threshold must be non-negative, got {r}")
        return self.values[k]

    @property
    def diameter(self) -> Fraction:
        return self.values[-1]

    @cached_property
    def min_positive(self):
        return self.values[1] if len(self.values) > 1 else None

    def index(self, label) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(label) from None

    def within(self, r) -> np.ndarray:
        """Boolean matrix of pairs at distance ``<= r``."""
        return self.rank <= self.level(r)

    def ball_masks(self, r) -> list:
        """Closed balls ``B[x, r]`` as integer bitmasks, one per point."""
        adj = self.within(r)
        weights = [1 << j for j in range(self.n)]
        return [sum(weights[j] for j in np.flatnonzero(row)) for row in adj]


def candidate_thresholds(space: FiniteMetricSpace) -> tuple:
    """The distinct distances; every (eps, delta)-dependent answer is constant between them."""
    return space.values


def validate_metric(matrix, labels: Sequence | None = None) -> FiniteMetricSpace:
    """Check a square matrix of exact non-negative numbers and build the space.

    Raises the first violation found, scanning indices in lexicographic order:
    the diagonal, then symmetry and positivity per pair ``(i, j)``, then the
    triangle inequality per triple ``(i, j, k)`` read as
    ``d(i, k) <= d(i, j) + d(j, k)``.
    """
    rows = [list(r) for r in matrix]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise NotSquare("distance matrix must be square and non-empty")
    dist = [[as_fraction(v) for v in r] for r in rows]

    for i in range(n):
        if dist[i][i] != 0:
            raise NonZeroDiagonal(f"d({i},{i}) = {dist[i][i]} is not 0", (i, i))
    for i in range(n):
        for j in range(i + 1, n):
            if dist[i][j] != dist[j][i]:
                raise NonSymmetric(f"d({i},{j}) = {dist[i][j]} != d({j},{i}) = {dist[j][i]}", (i, j))
            if dist[i][j] <= 0:
                raise NegativeOrZeroOffDiagonal(f"d({i},{j}) = {dist[i][j]} is not positive", (i, j))

    triple = _first_triangle_violation(dist)
    if triple is not None:
        i, j, k = triple
        raise TriangleViolation(
            f"d({i},{k}) = {dist[i][k]} > d({i},{j}) + d({j},{k}) = {dist[i][j] + dist[j][k]}",
            triple,
        )

    if labels is None:
        labels = [str(i) for i in range(n)]
    labels = tuple(labels)
    if len(labels) != n:
        raise NotSquare(f"{len(labels)} labels for {n} points")
    if len(set(labels)) != n:
        raise NotSquare("point labels must be distinct")
    return FiniteMetricSpace(labels, tuple(tuple(r) for r in dist))


def _first_triangle_violation(dist):
    n = len(dist)
    denom = 1
    for row in dist:
        for v in row:
            denom = math.lcm(denom, v.denominator)
    ints = [[v.numerator * (denom // v.denominator) for v in row] for row in dist]
    big = max(max(r) for r in ints)
    dtype = np.int64 if big < 2**60 else object
    m = np.array(ints, dtype=dtype)
    # slack[i, j, k] = d(i,j) + d(j,k) - d(i,k)
    slack = m[:, :, None] + m[None, :, :] - m[:, None, :]
    bad = np.argwhere(slack < 0)
    if len(bad) == 0:
        return None
    return tuple(int(t) for t in bad[0])


def rationalized_euclidean(coords, denominator: int) -> list:
    """Euclidean distances of rational points, rounded up to multiples of ``1/denominator``.

    Every off-diagonal entry gets one extra ``1/denominator``; rounding up can
    break the triangle inequality by at most that much, and the shift restores it.
    """
    pts = [(as_fraction(x), as_fraction(y)) for x, y in coords]
    n = len(pts)
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            dx = pts[i][0] - pts[j][0]
            dy = pts[i][1] - pts[j][1]
            sq = dx * dx + dy * dy  # exact rational
            # smallest m with m / D >= sqrt(sq), i.e. m^2 * q >= D^2 * p
            p, q = sq.numerator, sq.denominator
            m = math.isqrt(denominator * denominator * p // q)
            while m * m * q < denominator * denominator * p:
                m += 1
            out[i][j] = out[j][i] = Fraction(m + 1, denominator)
    return out


def ball(space: FiniteMetricSpace, x: int, r) -> PointSet:
    return frozenset(int(j) for j in np.flatnonzero(space.rank[x] <= space.level(r)))


def proximity_graph(space: FiniteMetricSpace, gap) -> dict:
    """Undirected graph as an adjacency dict: ``u -- v`` iff ``u != v`` and ``d(u, v) <= gap``."""
    adj = space.within(gap)
    return {
        u: frozenset(int(v) for v in np.flatnonzero(adj[u]) if v != u)
        for u in range(space.n)
    }


def components(space: FiniteMetricSpace, gap) -> list:
    """Connected components of the proximity graph, ordered by smallest member."""
    adj = space.within(gap)
    _, labels = connected_components(csr_matrix(adj), directed=False)
    return _partition(labels)


def _partition(labels) -> list:
    groups = {}
    for i, c in enumerate(labels):
        groups.setdefault(int(c), []).append(i)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def component_of(space: FiniteMetricSpace, x: int, gap) -> PointSet:
    for comp in components(space, gap):
        if x in comp:
            return comp
    raise IndexError(x)


def deg_points(space: FiniteMetricSpace, gap) -> PointSet:
    """Points whose component at resolution ``gap`` is a singleton."""
    return frozenset(next(iter(c)) for c in components(space, gap) if len(c) == 1)


def set_distance(space: FiniteMetricSpace, A: Iterable[int], B: Iterable[int]) -> Fraction:
    A, B = sorted(A), sorted(B)
    if not A or not B:
        raise EmptyArgument("set_distance needs two non-empty sets")
    k = int(space.rank[np.ix_(A, B)].min())
    return space.values[k]


def diameter(space: FiniteMetricSpace, A: Iterable[int]) -> Fraction:
    A = sorted(A)
    if not A:
        raise EmptyArgument("diameter of an empty set")
    k = int(space.rank[np.ix_(A, A)].max())
    return space.values[k]
