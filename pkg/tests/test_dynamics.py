import math
from fractions import Fraction as F
from itertools import combinations

import pytest

from shadowable import gallery
from shadowable.dynamics import (
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
from shadowable.errors import NotAPermutation, SingletonSpace, ZeroExponent
from shadowable.metric import validate_metric, ball

from conftest import CORPUS, isometric_gallery

TWO = validate_metric([[0, 1], [1, 0]])


# brute-force oracles: iterate maps directly and compare Fractions


def brute_pair_extremes(sys, x, y):
    ds = []
    a, b = x, y
    for _ in range(math.lcm(len(orbit(sys, x)[0]), len(orbit(sys, y)[0])) * 2):
        ds.append(sys.space.dist[a][b])
        a, b = sys.fwd[a], sys.fwd[b]
    return min(ds), max(ds)


def brute_equicontinuity(sys, alpha):
    best = F(0)
    for beta in sys.space.values:
        ok = all(
            brute_pair_extremes(sys, x, y)[1] <= alpha
            for x in range(sys.n) for y in range(sys.n)
            if sys.space.dist[x][y] <= beta
        )
        if ok:
            best = beta
    return best


def brute_continuity(sys, perm, t):
    return max(sys.space.dist[perm[a]][perm[b]] for a in range(sys.n) for b in range(sys.n)
               if sys.space.dist[a][b] <= t)


def test_orbit_examples():
    ident = gallery.identity_on(validate_metric(gallery.circle_metric(4)))
    assert orbit(ident, 2) == ([2], 1)
    assert orbit(gallery.odometer(2), 0) == ([0, 1, 2, 3], 4)
    assert orbit(gallery.circle_rotation(4, 2), 0) == ([0, 2], 2)


def test_omega_limit_examples():
    ident = gallery.identity_on(TWO)
    assert omega_limit(ident, 1) == {1}
    assert omega_limit(gallery.circle_rotation(4, 1), 0) == set(range(4))
    for sys in CORPUS:
        assert all(x in omega_limit(sys, x) for x in range(sys.n))


def test_pair_orbit_extremes():
    sys = gallery.circle_rotation(5, 2)
    assert pair_orbit_extremes(sys, 3, 3) == pair_orbit_extremes(sys, 3, 3)
    s = pair_orbit_extremes(sys, 3, 3)
    assert (s.min_dist, s.max_dist, s.period) == (0, 0, 5)
    s = pair_orbit_extremes(sys, 0, 2)
    assert s.min_dist == s.max_dist == sys.space.d(0, 2)
    rnd = gallery.random_system(6, 1)
    for x in range(6):
        for y in range(6):
            s = pair_orbit_extremes(rnd, x, y)
            assert (s.min_dist, s.max_dist) == brute_pair_extremes(rnd, x, y)
            assert s.min_dist <= rnd.space.d(x, y) <= s.max_dist


@pytest.mark.parametrize("sys", CORPUS, ids=lambda s: s.name)
def test_pair_extremes_table_matches_per_query(sys):
    lo, hi = sys._pair_orbit_ranks
    vals = sys.space.values
    for x in range(sys.n):
        for y in range(sys.n):
            s = pair_orbit_extremes(sys, x, y)
            assert (vals[lo[x, y]], vals[hi[x, y]]) == (s.min_dist, s.max_dist)
            if x != y:
                assert s.min_dist > 0


def test_distality_margin():
    assert distality_margin(gallery.identity_on(TWO)) == (1, (0, 1))
    for N, k in [(6, 1), (7, 3), (12, 5)]:
        assert distality_margin(gallery.circle_rotation(N, k))[0] == F(1, N)
    rnd = gallery.random_system(6, 1)
    brute = min(brute_pair_extremes(rnd, x, y)[0] for x, y in combinations(range(6), 2))
    margin, (a, b) = distality_margin(rnd)
    assert margin == brute
    assert pair_orbit_extremes(rnd, a, b).min_dist == margin
    with pytest.raises(SingletonSpace):
        distality_margin(gallery.identity_on(validate_metric([[0]])))


def test_equicontinuity_modulus_examples():
    rot = gallery.circle_rotation(8, 3)
    for alpha in [F(0), F(1, 8), F(3, 16), F(3, 8), F(1, 2)]:
        assert equicontinuity_modulus(rot, alpha) == rot.space.snap(alpha)
    assert equicontinuity_modulus(rot, 5) == rot.space.diameter
    rnd = gallery.random_system(6, 1)
    vals = rnd.space.values
    median = vals[len(vals) // 2]
    assert equicontinuity_modulus(rnd, median) == brute_equicontinuity(rnd, median)


@pytest.mark.parametrize("sys", CORPUS[:8], ids=lambda s: s.name)
def test_equicontinuity_modulus_brute_and_monotone(sys):
    prev = F(0)
    for alpha in sys.space.values:
        beta = equicontinuity_modulus(sys, alpha)
        assert beta == brute_equicontinuity(sys, alpha)
        assert beta >= prev
        prev = beta


def test_continuity_modulus():
    cat = gallery.cat_map(5)
    assert continuity_modulus(cat, "fwd", F(1, 5)) == brute_continuity(cat, cat.fwd, F(1, 5))
    assert continuity_modulus(cat, "inv", F(1, 5)) == brute_continuity(cat, cat.inv, F(1, 5))
    assert continuity_modulus(cat, "fwd", 0) == 0
    for sys in isometric_gallery():
        for t in sys.space.values:
            for direction in ("fwd", "inv"):
                assert continuity_modulus(sys, direction, t) == sys.space.snap(t)


def test_nonwandering_return():
    rot = gallery.circle_rotation(8, 3)
    assert nonwandering_return(rot, 0, F(1, 2)) == 1
    assert nonwandering_return(rot, 0, 0) == 8
    ident = gallery.identity_on(validate_metric(gallery.circle_metric(5)))
    assert nonwandering_return(ident, 3, F(1, 5)) == 1
    # brute force: least k with some y in the ball returning to it
    for sys in CORPUS:
        for x in range(sys.n):
            for eps in sys.space.values[:3]:
                B = ball(sys.space, x, eps)
                k = next(k for k in range(1, sys.order + 1)
                         if any(sys.iterate(y, k) in B for y in B))
                assert nonwandering_return(sys, x, eps) == k


def test_pseudo_orbit_graph_examples():
    rnd = gallery.random_system(5, 3)
    g0 = pseudo_orbit_graph(rnd, 0)
    assert g0.edges() == {(u, rnd.fwd[u]) for u in range(5)}
    gfull = pseudo_orbit_graph(rnd, rnd.space.diameter)
    assert gfull.edges() == {(u, v) for u in range(5) for v in range(5)}
    ident = gallery.identity_on(validate_metric(gallery.circle_metric(4)))
    g = pseudo_orbit_graph(ident, F(1, 4))
    assert g.succ[0] == (0, 1, 3)
    assert all(set(g.succ[u]) == {(u - 1) % 4, u, (u + 1) % 4} for u in range(4))


@pytest.mark.parametrize("sys", CORPUS, ids=lambda s: s.name)
def test_pseudo_orbit_graph_properties(sys):
    prev = set()
    for d in sys.space.values:
        g = pseudo_orbit_graph(sys, d)
        edges = g.edges()
        assert prev <= edges
        assert all(sys.fwd[u] in g.succ[u] for u in range(sys.n))
        assert all(p for p in g.pred())
        prev = edges


def test_chain_classes_examples():
    rot = gallery.circle_rotation(6, 2)
    classes, flags = chain_classes(rot, 0)
    assert classes == sorted((frozenset(c) for c in rot.cycles), key=min)
    assert all(flags)
    classes, _ = chain_classes(rot, rot.space.diameter)
    assert classes == [frozenset(range(6))]
    sp = gallery.cantor_plus_interval(2, 5)
    values, is_cantor = gallery.cantor_plus_interval_values(2, 5)
    classes, _ = chain_classes(gallery.identity_on(sp), F(1, 4))
    interval = frozenset(i for i, c in enumerate(is_cantor) if not c)
    assert any(interval <= c for c in classes)
    assert frozenset([values.index(F(0)), values.index(F(2, 9))]) in classes


@pytest.mark.parametrize("sys", CORPUS, ids=lambda s: s.name)
def test_chain_classes_coarsen(sys):
    prev = None
    for d in sys.space.values:
        classes, flags = chain_classes(sys, d)
        assert all(flags)
        if prev is not None:
            assert all(any(c <= e for e in classes) for c in prev)
        prev = classes


def test_is_minimal():
    assert not is_minimal(gallery.identity_on(validate_metric(gallery.circle_metric(3))))
    for N in range(2, 13):
        for k in range(N):
            assert is_minimal(gallery.circle_rotation(N, k)) == (math.gcd(k, N) == 1)
    for L in range(1, 5):
        assert is_minimal(gallery.odometer(L))


def test_power_system():
    rot = gallery.circle_rotation(4, 1)
    assert power_system(rot, 1).fwd == rot.fwd
    assert power_system(rot, -1).fwd == rot.inv
    assert power_system(rot, 2).fwd == gallery.circle_rotation(4, 2).fwd
    with pytest.raises(ZeroExponent):
        power_system(rot, 0)
    for sys in CORPUS[:10]:
        for a in (-3, -1, 2, 3):
            for b in (-2, 1, 5):
                assert power_system(power_system(sys, a), b).fwd == power_system(sys, a * b).fwd


def test_make_system_rejects_non_permutations():
    with pytest.raises(NotAPermutation) as err:
        make_system(validate_metric(gallery.circle_metric(3)), [0, 0, 1])
    assert err.value.indices == (0,)
