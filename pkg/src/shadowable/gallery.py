"""Deterministic generators for the example systems.

Each generator documents canonical scales (see :func:`documented_scales`) so
that tests and reports refer to named scale pairs.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .dynamics import DynSystem, make_system
from .errors import BadParams
from .metric import FiniteMetricSpace, component_of, rationalized_euclidean, validate_metric

EUCLIDEAN_GRID = 64  # random points live on the (1/64)-grid of the unit square
EUCLIDEAN_DENOMINATOR = 100  # distances are rounded up to multiples of 1/100


def circle_metric(N: int) -> list:
    return [[Fraction(min(abs(i - j), N - abs(i - j)), N) for j in range(N)] for i in range(N)]


def circle_rotation(N: int, k: int) -> DynSystem:
    if N < 2 or not 0 <= k < N:
        raise BadParams(f"circle_rotation needs N >= 2 and 0 <= k < N, got N={N}, k={k}")
    space = validate_metric(circle_metric(N))
    return make_system(space, [(i + k) % N for i in range(N)], f"circle_rotation(N={N},k={k})")


def identity_on(space: FiniteMetricSpace, name: str = "identity") -> DynSystem:
    return make_system(space, range(space.n), name)


def two_adic_metric(levels: int) -> list:
    n = 1 << levels
    out = [[Fraction(0)] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            if x != y:
                v = ((x ^ y) & -(x ^ y)).bit_length() - 1  # first differing bit
                out[x][y] = Fraction(1, 1 << v)
    return out


def odometer_labels(levels: int) -> list:
    # bit 0 (the carry bit) is written first
    return ["".join(str(x >> i & 1) for i in range(levels)) for x in range(1 << levels)]


def odometer(levels: int) -> DynSystem:
    if levels < 1:
        raise BadParams(f"odometer needs levels >= 1, got {levels}")
    n = 1 << levels
    space = validate_metric(two_adic_metric(levels), odometer_labels(levels))
    return make_system(space, [(x + 1) % n for x in range(n)], f"odometer(levels={levels})")


def cat_map(N: int) -> DynSystem:
    if N < 2:
        raise BadParams(f"cat_map needs N >= 2, got {N}")
    pts = [(x, y) for x in range(N) for y in range(N)]

    def circ(a, b):
        return min(abs(a - b), N - abs(a - b))

    dist = [[Fraction(max(circ(p[0], q[0]), circ(p[1], q[1])), N) for q in pts] for p in pts]
    space = validate_metric(dist, [f"{x},{y}" for x, y in pts])
    fwd = [((2 * x + y) % N) * N + (x + y) % N for x, y in pts]
    return make_system(space, fwd, f"cat_map(N={N})")


def cantor_plus_interval_values(level: int, grid: int):
    """Sorted point values and a flag per point telling whether it lies in [0, 1]."""
    if level < 1 or grid < 2:
        raise BadParams(f"cantor_plus_interval needs level >= 1 and grid >= 2, got {level}, {grid}")
    lefts = [Fraction(0)]
    length = Fraction(1)
    for _ in range(level):
        length /= 3
        lefts = [a for l in lefts for a in (l, l + 2 * length)]
    cantor = set(lefts) | {Fraction(1)}
    interval = {1 + Fraction(i, grid - 1) for i in range(grid)}
    values = sorted(cantor | interval)
    return values, [v <= 1 for v in values]


def cantor_plus_interval(level: int, grid: int) -> FiniteMetricSpace:
    """Level-``level`` Cantor endpoints in [0, 1] joined at 1 with a ``grid``-point grid on [1, 2]."""
    values, _ = cantor_plus_interval_values(level, grid)
    dist = [[abs(a - b) for b in values] for a in values]
    return validate_metric(dist, [str(v) for v in values])


def _tree_metric(n: int, rng) -> list:
    parent = [-1] + [int(rng.integers(0, i)) for i in range(1, n)]
    weight = [0] + [int(rng.integers(1, 5)) for _ in range(1, n)]
    depth = [0] * n
    for i in range(1, n):
        depth[i] = depth[parent[i]] + weight[i]

    def ancestors(i):
        out = []
        while i >= 0:
            out.append(i)
            i = parent[i]
        return out

    anc = [ancestors(i) for i in range(n)]
    total = sum(weight) or 1
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        si = set(anc[i])
        for j in range(i + 1, n):
            lca = next(a for a in anc[j] if a in si)
            out[i][j] = out[j][i] = Fraction(depth[i] + depth[j] - 2 * depth[lca], total)
    return out


def random_coords(n: int, seed: int) -> list:
    rng = np.random.default_rng(seed)
    raw = rng.integers(0, EUCLIDEAN_GRID + 1, size=(n, 2))
    return [(Fraction(int(a), EUCLIDEAN_GRID), Fraction(int(b), EUCLIDEAN_GRID)) for a, b in raw]


def random_system(n: int, seed: int, metric_kind: str = "euclidean_square") -> DynSystem:
    if n < 1:
        raise BadParams(f"random_system needs n >= 1, got {n}")
    if metric_kind == "euclidean_square":
        dist = rationalized_euclidean(random_coords(n, seed), EUCLIDEAN_DENOMINATOR)
        perm_rng = np.random.default_rng([seed, 1])
    elif metric_kind == "random_tree":
        rng = np.random.default_rng([seed, 2])
        dist = _tree_metric(n, rng)
        perm_rng = rng
    else:
        raise BadParams(f"unknown metric_kind {metric_kind!r}")
    space = validate_metric(dist)
    perm = [int(v) for v in perm_rng.permutation(n)]
    return make_system(space, perm, f"random_system(n={n},seed={seed},metric_kind={metric_kind})")


def documented_scales(kind: str, **params) -> dict:
    """Canonical (eps, delta) choices shipped with each generator."""
    if kind == "circle_rotation":
        N = params["N"]
        return {"delta": Fraction(1, N), "eps": [Fraction(j, N) for j in range(1, N // 2 + 1)]}
    if kind == "odometer":
        L = params["levels"]
        return {"pairs": [(Fraction(1, 2**j), Fraction(1, 2**j)) for j in range(L + 1)]}
    if kind == "cantor_plus_interval":
        level, grid = params["level"], params["grid"]
        step = Fraction(1, grid - 1)
        # delta = grid step fuses the interval; eps = smallest Cantor spacing
        return {"merge_gap": step, "delta": step, "eps": Fraction(2, 3**level)}
    raise BadParams(f"no documented scales for {kind!r}")


def cantor_shadowable_prediction(level: int, grid: int) -> frozenset:
    """Cantor-side points outside the interval block's component at the merge gap."""
    space = cantor_plus_interval(level, grid)
    values, is_cantor = cantor_plus_interval_values(level, grid)
    gap = documented_scales("cantor_plus_interval", level=level, grid=grid)["merge_gap"]
    block = component_of(space, values.index(Fraction(2)), gap)
    return frozenset(i for i in range(space.n) if is_cantor[i] and i not in block)
