"""Compare the compiled and pure-Python subset-automaton kernels.

    python benchmarks/bench_kernel.py [--repeat 3]

Each case builds one automaton from scratch (the memo cache is bypassed by
calling the kernel directly) and reports the best wall time per backend.
"""

import argparse
import time
from fractions import Fraction as F

from shadowable import gallery, kernel
from shadowable.engine import _adjacency

CASES = [
    ("circle_rotation(32,5)", lambda: gallery.circle_rotation(32, 5), F(15, 32), F(1, 32)),
    ("cat_map(4)", lambda: gallery.cat_map(4), F(1, 4), F(1, 4)),
    ("cat_map(7)", lambda: gallery.cat_map(7), F(2, 7), F(1, 7)),
    ("cat_map(6)", lambda: gallery.cat_map(6), F(1, 3), F(1, 6)),
    ("random_system(9,6)", lambda: gallery.random_system(9, 6), F(19, 25), F(83, 100)),
]


def run_case(sys, eps, delta, backend, repeat):
    balls = sys.space.ball_masks(eps)
    ptr, idx = _adjacency(sys, delta)
    best, states = float("inf"), 0
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = kernel.closure(sys.n, balls, ptr, idx, list(sys.fwd), 10**7, backend=backend)
        best = min(best, time.perf_counter() - t0)
        states = len(out["state_u"])
    return best, states


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = kernel.available_backends()
    print(f"{'case':24} {'states':>8} " + " ".join(f"{b + ' (s)':>14}" for b in backends) + "   speedup")
    for name, make, eps, delta in CASES:
        sys = make()
        times = {}
        for b in backends:
            times[b], states = run_case(sys, eps, delta, b, args.repeat)
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        print(f"{name:24} {states:>8} " + " ".join(f"{times[b]:>14.4f}" for b in backends) + f"   {speed:7.1f}x")


if __name__ == "__main__":
    main()
