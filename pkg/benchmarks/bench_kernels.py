"""Compare the compiled kernel backend against the pure Python one.

Micro section: rref, nullspace and intersect on seeded random matrices,
timed per call for both backends loaded side by side.  End-to-end
section: a reconstruction round trip in a subprocess, once as installed
and once with SYMPOL_PURE=1.

Run from the repository root:

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --trials 2000
"""

import argparse
import os
import random
import subprocess
import sys
import time

from sympol._kernels import fast, pure


def random_matrix(rng, rows, width, p):
    return tuple(tuple(rng.randrange(p) for _ in range(width)) for _ in range(rows))


def time_call(fn, args_list):
    start = time.perf_counter()
    for args in args_list:
        fn(*args)
    return time.perf_counter() - start


def micro(trials):
    rng = random.Random("bench")
    cases = {
        "rref 4x8 GF(2)": [(random_matrix(rng, 4, 8, 2), 8, 2) for _ in range(trials)],
        "rref 6x12 GF(3)": [(random_matrix(rng, 6, 12, 3), 12, 3) for _ in range(trials)],
        "rref 8x16 GF(5)": [(random_matrix(rng, 8, 16, 5), 16, 5) for _ in range(trials)],
        "nullspace 4x10 GF(3)": [(random_matrix(rng, 4, 10, 3), 10, 3) for _ in range(trials)],
    }
    inter = []
    for _ in range(trials):
        a = pure.rref(random_matrix(rng, 3, 10, 3), 10, 3)
        b = pure.rref(random_matrix(rng, 3, 10, 3), 10, 3)
        inter.append((a, b, 10, 3))
    print(f"micro benchmarks, {trials} calls each")
    header = f"{'case':24} {'pure':>10} {'fast':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    rows = list(cases.items()) + [("intersect 3+3x10 GF(3)", inter)]
    for name, args_list in rows:
        kernel = name.split()[0]
        t_pure = time_call(getattr(pure, kernel), args_list)
        t_fast = time_call(getattr(fast, kernel), args_list)
        ratio = t_pure / t_fast if t_fast else float("inf")
        print(f"{name:24} {t_pure:9.3f}s {t_fast:9.3f}s {ratio:7.1f}x")


ROUND_TRIP = """
import time
from sympol import BACKEND
from sympol.bases import random_collineation
from sympol.recon import induce, reconstruct
from sympol.space import SymplecticSpace

space = SymplecticSpace.standard(3, 2)
start = time.perf_counter()
for seed in range(5):
    h = random_collineation(space, seed)
    pm, cert = reconstruct(induce(h, 2))
    assert pm == h and cert["pass"]
print(f"{BACKEND}: {time.perf_counter() - start:.3f}s")
"""


def end_to_end():
    print()
    print("end to end: five reconstruction round trips at (n, p) = (3, 2), k = 2")
    for env_extra in ({}, {"SYMPOL_PURE": "1"}):
        env = dict(os.environ, **env_extra)
        out = subprocess.run(
            [sys.executable, "-c", ROUND_TRIP], env=env, capture_output=True, text=True
        )
        if out.returncode != 0:
            print(out.stderr, file=sys.stderr)
            raise SystemExit(out.returncode)
        print("  " + out.stdout.strip())


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=5000, help="calls per micro case")
    parser.add_argument("--skip-end-to-end", action="store_true")
    cfg = parser.parse_args()
    if fast.BACKEND == pure.BACKEND:
        raise SystemExit("compiled backend unavailable; nothing to compare")
    micro(cfg.trials)
    if not cfg.skip_end_to_end:
        end_to_end()


if __name__ == "__main__":
    main()
